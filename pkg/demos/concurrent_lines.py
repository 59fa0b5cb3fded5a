"""
Pencils of lines
================

Three and four concurrent lines: the irregularity of the (Z/n)^r cover as n
grows, next to the closed forms it should follow.
"""
from qav.catalog import four_lines, triangle
from qav.charvariety import assemble
from qav.covers import CoverSpec, betti_branched, irregularity

three = assemble(triangle())
four = assemble(four_lines())

print(" n  q(3 lines)  (n-1)(n-2)/2  q(4 lines)  (n-1)(n^2-n-1)  b1(4 lines)")
for n in range(2, 8):
    q3 = irregularity(three, CoverSpec.uniform(n, 3))
    q4 = irregularity(four, CoverSpec.uniform(n, 4))
    b4 = betti_branched(four, CoverSpec.uniform(n, 4))
    print(f"{n:2d}  {q3:10d}  {(n - 1) * (n - 2) // 2:12d}  {q4:10d}  {(n - 1) * (n * n - n - 1):14d}  {b4:11d}")

# two contributing faces on the full pencil, at levels 1 and 2
for rec in four.faces_of((0, 1, 2, 3)):
    print("level", rec.face.level, "twist", rec.twist, "h1", rec.h1)
