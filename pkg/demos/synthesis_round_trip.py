"""
Any list of multilinear indifference equations can be realised as payoffs.
Go equations -> payoffs -> equations and compare residuals with the direct
evaluation at a random interior profile.
"""
import random
from fractions import Fraction as F

from nashcompile.game import Game, MixedProfile, indifference_residuals
from nashcompile.synth import equations_from_payoffs, evaluate_equation, payoffs_from_equations, random_equation

rng = random.Random(0)
counts = (2, 3, 2)
eqs = [[random_equation(rng, i, j, counts) for j in range(1, counts[i])] for i in range(len(counts))]
game = Game(counts, tuple(payoffs_from_equations(i, row, counts) for i, row in enumerate(eqs)))
print("player 3 payoffs (as floats):\n", game.float_payoffs[2])

back = [equations_from_payoffs(game, i) for i in range(len(counts))]
print("round trip exact:", back == eqs)

profile = MixedProfile(([F(1, 3), F(2, 3)], [F(1, 2), F(1, 4), F(1, 4)], [F(3, 5), F(2, 5)]))
rep = indifference_residuals(game, profile)
direct = [[evaluate_equation(e, profile) for e in row] for row in eqs]
print("residuals:", [[str(r) for r in row] for row in rep.residuals])
print("direct:   ", [[str(r) for r in row] for row in direct])
