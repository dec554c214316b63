"""
x - 2 = 0 has its root outside the unit box.  A change of variables moves
all of R into the open box first; the witness remembers the map, so points
are still given in the original coordinate.
"""
from nashcompile import parse_system
from nashcompile.encoders import encode
from nashcompile.normalize import normalize_to_box
from nashcompile.polysys import format_system, univariate_coefficients
from nashcompile.verify import check_points, roots_in_unit_interval

line = parse_system("vars: x1\neq: x1 - 2 = 0")
cleared, cmap = normalize_to_box(line)
print(format_system(cleared))
print("x = 2 sits at y =", cmap.to_box((2.0,))[0])
print(roots_in_unit_interval(univariate_coefficients(cleared[0])).to_text())

for method in ("3p", "np", "1d"):
    game, witness = encode(method, line, normalize=True)
    report = check_points(game, witness, [(2.0,), (1.9,)], tol=1e-9)
    print(method, [r.to_line() for r in report.results])
