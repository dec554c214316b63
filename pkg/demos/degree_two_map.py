"""
z -> z^2, written as (x^2 - y^2, 2xy), wraps a small circle twice around
the origin.  Move its zero to (1/4, 1/4), compile, and check the equilibrium.
"""
from fractions import Fraction as F

from nashcompile.encoders import encode_three_player
from nashcompile.polysys import format_system
from nashcompile.verify import check_points, local_degree, power_map, translated_power_system

for k in (1, 2, 3, 5):
    print(f"degree of z^{k}:", local_degree(power_map(k)))

sys = translated_power_system(2)
print(format_system(sys))
print("degree around (1/4, 1/4):", local_degree(tuple(sys), center=(F(1, 4), F(1, 4)), radius=F(1, 8)))

game, witness = encode_three_player(sys)
print("game formats", game.strategy_counts)
report = check_points(game, witness, [(F(1, 4), F(1, 4)), (F(1, 4), F(1, 3))])
print(report.to_text())
