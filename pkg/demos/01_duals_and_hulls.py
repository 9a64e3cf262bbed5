"""Walk through the two dual operators on a small planar point set.

Builds the body (intersection of unit disks) and the spindle hull of a
random handful of points, shows the status trichotomy as the radius
shrinks, and queries hull membership with a separating certificate.
"""

import numpy as np

from ballbodies import (
    PointSet,
    ball_hull_membership,
    circumradius,
    dual,
    membership,
)

rng = np.random.default_rng(0)
X = PointSet(rng.uniform(-0.5, 0.5, size=(6, 2)))
cr, center = circumradius(X)
print(f"6 random points, circumradius {cr:.4f} about {np.round(center, 4)}")

for r in (1.0, cr + 1e-13, 0.9 * cr):
    body = dual(X, r)
    print(f"  r = {r:.4f}: body status {body.status.value}")

# generators lie in their own body exactly when all pairwise distances
# are at most r
diam = max(np.linalg.norm(p - q) for p in X.points for q in X.points)
body = dual(X, 1.0)
inside = all(membership(body, p) for p in X.points)
print(f"\ndiameter {diam:.4f} vs r = 1: generators inside the body = {inside}")

# hull membership with certificates: a point far outside is separated by
# an explicit member z of the dual with |z - q| > r
for q in (center, center + np.array([3.0, 0.0])):
    res = ball_hull_membership(X, 1.0, q)
    if res.inside:
        print(f"query {np.round(q, 3)}: inside the hull")
    else:
        print(f"query {np.round(q, 3)}: outside, certificate at distance {res.distance:.4f}")
