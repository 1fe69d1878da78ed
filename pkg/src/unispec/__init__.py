"""Jordan types of random unipotent matrices and the eigenvalues of their action on lines.

Exact distributions for uniform unipotent elements of GL(n, p) and for the
upper unitriangular group T(n, p), partition growth samplers for both, line
orbit profiles, arc eigenvalue statistics, and brute-force oracles for all of
it over small prime fields.
"""

from .partitions import Partition, StandardTableau, conjugate, enumerate_partitions, enumerate_syt, m_star, multiplicities, n_stat
from .qseries import euler_inf, hl_evaluate, hl_principal, poch_inv
from .measures import (
    GL,
    TRIANGULAR,
    JordanDistribution,
    chain_count,
    gl_unipotent_dist,
    subgroup_count_type_r,
    triangular_dist,
)

__version__ = "0.1.0"
