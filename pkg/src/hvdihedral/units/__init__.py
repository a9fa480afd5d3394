from .delta import delta_eval, delta_lattice
from .elliptic import (CMPoint, EllipticUnitPacket, default_precision, elliptic_unit_conjugates,
                       split_ideal)
from .regulator import (LOG_CONVENTIONS, BadPrimeError, RegulatorValue, lambda_independence_defect,
                        log_realization, reduced_labelings, regulator_mod_p, transfer_polys,
                        u_xi_weights)
from .io import packet_from_json, packet_to_json
