"""
x^2 - x + 3/16 = 0 has roots 1/4 and 3/4.  Compile it into a game three
different ways and watch the roots turn into totally mixed equilibria.
"""
from fractions import Fraction as F

from nashcompile import parse_system
from nashcompile.encoders import encode, replay_witness
from nashcompile.game import indifference_residuals
from nashcompile.verify import grid_clusters

quad = parse_system("vars: x1\neq: x1^2 - x1 + 3/16 = 0")

# --- one game per method
for method in ("3p", "np", "1d"):
    game, witness = encode(method, quad)
    print(f"{method}: strategy counts {game.strategy_counts}")
    for a in (F(1, 4), F(3, 4), F(1, 2)):
        profile = replay_witness(witness, (a,))
        rep = indifference_residuals(game, profile)
        print(f"   a={a}:  max residual {rep.max_abs}  interior {rep.all_interior}")
        if a == F(1, 4):
            print("   profile", profile)

# --- the other direction: scan a grid and count what passes
game, witness = encode("1d", quad)
clusters = grid_clusters(game, witness, grid=2001, tol=1e-9)
print("clusters on a 2001-point grid:", [(c[0], c[-1]) for c in clusters])
