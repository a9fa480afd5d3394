from .linalg import NoSolution, smith_solve
from .sigma import (ContextError, DegenerateContextError, EisensteinContext, Sigma1,
                    shimura_pairing, sigma_pairing, solve_sigma1)
