"""
Orbits, column traces and classes of points
===========================================
"""

from itertools import product

from catopo import CyclicConfiguration, column_trace, orbit_cycle, same_gilman_class, zoo

rule = zoo.paper3()
x = CyclicConfiguration.parse(rule, "wr000")

orbit = orbit_cycle(rule, x)
print("orbit preperiod, period:", orbit.preperiod, orbit.period)

trace = column_trace(rule, x, -1, 1)
print("column at [-1, 1]:", [rule.alphabet.format(w) for w in trace.words])
print("trace preperiod, period:", trace.preperiod, trace.period)

# other points with the same column history at [-1, 1]
mates = {
    y.format(rule)
    for w in product(range(3), repeat=6)
    for y in [CyclicConfiguration(w)]
    if y != x and same_gilman_class(rule, x, y, -1, 1)
}
print(len(mates), "period-6 points share the trace, e.g.", sorted(mates)[:4])
