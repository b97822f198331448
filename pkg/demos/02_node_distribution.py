"""Where do the zeros of orthogonal Müntz polynomials sit?

For the weight (2 - t)**p on [0, 2] the zeros move away from t = 2 as lam
shrinks, and further still as p grows.
"""

from muntzquad import node_distance_study

lambdas = [1.0, 0.75, 0.5, 0.25]
for degree in (5, 7):
    print(f"degree {degree}")
    for p in (1, 2, 3):
        recs = node_distance_study(lambdas, p, degree, 2.0)
        norms = "  ".join(f"{r['distance_norm']:.4f}" for r in recs)
        print(f"  p={p}  ||t - 2||_2 for lam = 1, .75, .5, .25:  {norms}")

print("\nzeros for degree 5, p = 1")
for rec in node_distance_study(lambdas, 1, 5, 2.0):
    print(f"  lam={rec['lambda']:<5} " + " ".join(f"{t:.4f}" for t in rec["roots"]))
