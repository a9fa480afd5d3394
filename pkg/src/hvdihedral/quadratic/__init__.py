from .forms import (FormClassGroup, QuadOrder, class_group, class_number_formula, compose,
                    reduce_form, reduced_forms, representation_counts)
from .characters import (RingClassCharacter, TrivialCharacterError, all_characters,
                         characters_of_order, conductor, m_of_xi, primitive_character,
                         theta_newform)
from .optimal import (ConsistencyError, QSeries2, ReconstructionError, coset_coefficients,
                      optimal_form_coeffs, reconstruct_opt, restricted_optimal_series)
