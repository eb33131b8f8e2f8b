"""
Counting root powers inside an orientation word
===============================================

A cycle is written as a word over ``+`` (forward edge), ``-`` (backward edge)
and ``*`` (both directions).  A pattern sits inside a text when its symbols
can be picked out left to right.  A pattern ``*`` accepts any text symbol,
while a text ``*`` is only accepted by a pattern ``*``.  This walk-through
shows the one-pass count used everywhere else in the package.
"""

from cyclerecon.orientation import primitive_root
from cyclerecon.starsub import (
    gamma_set,
    greedy_stream_count,
    is_star_substring,
    leftmost_embedding,
    max_power,
)

# the target "+-+-" is the square of its root "+-"
rf = primitive_root("+-+-")
print("root of +-+-:", rf.root, "repeated", rf.r, "times")

# the 15-cycle from the opening example, and where its first copy of "+-" lands
C = "+-+-+--++--++--"
print("leftmost +-+- in C:", leftmost_embedding("+-+-", C))
print("pattern '*' in '+-':", is_star_substring("*", "+-"), " pattern '+' in '*':", is_star_substring("+", "*"))

# one greedy pass matches the root over and over and counts symbols
sc = greedy_stream_count("+-", C)
print(f"matched {sc.matched} symbols of (+-)^inf -> {sc.power} full copies")

# a partial last copy does not count: rounding down, never up
sc = greedy_stream_count("+-", "+-+")
print("in '+-+':", sc.matched, "symbols, power", sc.power, "(rounding up would claim", sc.power_ceil, ")")

# the count also works on a generator, nothing is stored
stream = (x for x in "+-" * 50_000)
print("streamed power:", greedy_stream_count("+-", stream).power)

# shifts i of the root such that shift^k followed by one more symbol still fits
for k in (3, 4, 5):
    print(f"k={k}: shifts with room to spare", sorted(gamma_set("+-", C, k)), "max power", max_power("+-", C))
