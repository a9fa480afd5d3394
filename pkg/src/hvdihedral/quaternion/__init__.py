from .algebra import QuatAlg, QuatOrder, build_algebra, hilbert_symbol, maximal_order, ramified_places
from .ideals import (IdealClassSet, Lattice, equivalent, ideal_classes, neighbors, reduce_ideal,
                     unit_ideal, unit_weight)
from .brandt import (BrandtData, Embedding, PicFn, brandt, brandt_csv, brandt_data, heegner_map, matmul,
                     optimal_embedding, pairing, pushforward, sigma_p, theta_lift)
