"""
Period spectrum between blocking words
======================================

Rooms of growing size between two walls cycle with growing periods.
The running lcm of the periods keeps climbing.
"""

from itertools import product

from catopo import period_spectrum, zoo
from catopo.factor import format_spectrum
from catopo.scan import Predicates, scan

rule = zoo.paper3()
ys = [w for n in range(1, 7) for w in product(rule.word("0r"), repeat=n)]
rep = period_spectrum(rule, "ww", ys)
print("periods:", rep.periods, "lcm:", rep.lcm, "grew:", rep.lcm_grew)
print("\n".join(format_spectrum(rule, rep)[:8]))

# a surjective rule from the sampled wall subspace
preds = Predicates(surjective=True, blocking=(1, 2), not_eventually_periodic=16)
hit = next(scan("walled:3", preds, count=20000, seed=0))
print(hit.name, hit.rule.alphabet.format(hit.blocking_word))
ys = [w for n in range(1, 7) for w in product(range(3), repeat=n)]
rep = period_spectrum(hit.rule, hit.blocking_word, ys)
print("periods:", rep.periods, "lcm:", rep.lcm, "ill-defined entries:", len(rep.errors))
