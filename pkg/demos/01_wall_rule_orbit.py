"""
The three-symbol wall rule
==========================

Walls ``w`` never move. Between them a ``r`` walks right and the
cell it leaves turns back to ``0``.
"""

from catopo import CyclicConfiguration, spacetime, zoo
from catopo.render import to_ascii

rule = zoo.paper3()
print(rule.to_json()["table"])

# one period of the point, walls included
x = CyclicConfiguration.parse(rule, "wr000")
print(to_ascii(spacetime(rule, x, 4, 0, 4), rule.alphabet))

# a longer room between walls takes longer to settle
x = CyclicConfiguration.parse(rule, "wrr0000")
print(to_ascii(spacetime(rule, x, 10, 0, 6), rule.alphabet))
