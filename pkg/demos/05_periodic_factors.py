"""
Periodic factors from column traces
===================================

The window matters. Cell -1 still reads cell -2, which the walls do not
protect, so the narrow window leaks. The wall-to-wall window does not.
"""

from catopo import CyclicConfiguration, build_factor, verify_factor, zoo

rule = zoo.paper3()
x = CyclicConfiguration.parse(rule, "wr000")

for window in [(-1, 1), (0, 5)]:
    f = build_factor(rule, x, *window)
    v = verify_factor(rule, f, 6)
    words = [rule.alphabet.format(w) for w in f.phase_words]
    print(window, "period", f.period, words, f"{len(v.violations)}/{v.in_domain} violations")
    if v.violations:
        bad = v.violations[0]
        print("   e.g.", bad.y.format(rule), "phase", bad.phase, "->", rule.alphabet.format(bad.image_word))
