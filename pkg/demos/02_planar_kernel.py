"""Exact planar computations: areas, perimeters, constant width, SVG.

The classical lens of two unit disks at distance 0.8 has closed-form
area and perimeter; the script checks them, verifies that body and hull
widths sum to 2r in every direction, and writes both regions to SVG
files in the current directory.
"""

import math
import pathlib

import numpy as np

from ballbodies import PointSet, exact2d

X = PointSet(np.array([[0.0, 0.0], [0.8, 0.0]]))
r = 1.0

body = exact2d.disk_intersection(X, r)
hull = exact2d.spindle_hull_2d(X, r)

alpha = math.acos(0.4)
area_closed = 2.0 * alpha - 0.8 * math.sin(alpha)
print(f"lens area     {exact2d.area(body):.12f}  (closed form {area_closed:.12f})")
print(f"lens perimeter {exact2d.perimeter(body):.12f}  (closed form {4.0 * alpha:.12f})")
print(f"hull perimeter {exact2d.perimeter(hull):.12f}")

worst = 0.0
for j in range(180):
    u = np.array([math.cos(math.pi * j / 180.0), math.sin(math.pi * j / 180.0)])
    width = (exact2d.support_value(body, u) + exact2d.support_value(body, -u)
             + exact2d.support_value(hull, u) + exact2d.support_value(hull, -u))
    worst = max(worst, abs(width - 2.0 * r))
print(f"max |width(body) + width(hull) - 2r| over 180 directions: {worst:.2e}")

for name, region in (("lens_body.svg", body), ("lens_hull.svg", hull)):
    pathlib.Path(name).write_text(exact2d.render_svg(region))
    print(f"wrote {name}")
