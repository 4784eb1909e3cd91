"""
Blocking words and the equicontinuity classes
=============================================

A certified blocking word fixes a column no matter what surrounds it.
"""

from catopo import BlockingQuery, classify_kurka, find_blocking_words, verify_blocking, zoo
from catopo.blocking import replay_witness

rule = zoo.paper3()
print(verify_blocking(rule, BlockingQuery(rule.word("ww"), 1, 0)))

found = find_blocking_words(rule, 1, 2)
print("length-2 blocking words:", [(rule.alphabet.format(w), p) for w, p, _ in found])

# the shift moves every column, and the refuter says how
shift = zoo.shift()
verdict = verify_blocking(shift, BlockingQuery(shift.word("00"), 1, 0))
print(verdict.step, replay_witness(shift, verdict))

for name in ("paper3", "identity", "rot3", "shift", "wallxor"):
    print(f"{name:10s}", classify_kurka(zoo.ZOO[name].rule))
