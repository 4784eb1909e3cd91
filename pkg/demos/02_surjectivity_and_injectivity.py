"""
Deciding surjectivity and injectivity
=====================================
"""

from catopo import count_preimages, eca, find_diamond, is_injective, is_surjective, zoo

rule = zoo.paper3()
rep = is_surjective(rule)
fmt = rule.alphabet.format
print("surjective:", rep.verdict, "shortest orphan:", fmt(rep.orphan))

# every word of length 2 has a preimage, so "rr" is not an orphan
for word in ("rr", "w0r"):
    print(word, "preimages:", count_preimages(rule, word))

inj = is_injective(rule)
print("injective:", inj.verdict, "diamond:", [fmt(z) for z in inj.diamond])
print("shortest diamond found directly:", [fmt(z) for z in find_diamond(rule, 3)])

# over the elementary rules
surjective = [n for n in range(256) if is_surjective(eca(n)).verdict]
injective = [n for n in surjective if is_injective(eca(n)).verdict]
print(len(surjective), "surjective elementary rules")
print("injective ones:", injective)

# rule 90 is onto but two-to-one on spatially periodic points
x, y = is_injective(eca(90)).periodic_pair
print("rule 90 collapses", x.format(eca(90)), "and", y.format(eca(90)))
