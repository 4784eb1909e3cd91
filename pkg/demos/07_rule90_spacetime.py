"""
Rendering a space-time diagram
==============================
"""

from pathlib import Path

from catopo import CyclicConfiguration, eca, spacetime
from catopo.render import to_ascii, to_pgm

rule = eca(90)
x = CyclicConfiguration(tuple(int(i == 32) for i in range(64)))
block = spacetime(rule, x, 31, 0, 63)
print(to_ascii(block, rule.alphabet, " #"))

Path("rule90.pgm").write_bytes(to_pgm(block, rule.alphabet))
