"""Speed-limit function alpha^-1 and fidelity models F(z)."""

from zzbound.speedlimit.fidelity import (
    FidelityKind,
    FidelityModel,
    alpha_inverse,
    fidelity_bhatta,
    fidelity_coherent,
    fidelity_qsl,
    load_tabulated_fidelity,
    zz_bracket,
)

__all__ = [
    "FidelityKind",
    "FidelityModel",
    "alpha_inverse",
    "fidelity_qsl",
    "fidelity_bhatta",
    "fidelity_coherent",
    "zz_bracket",
    "load_tabulated_fidelity",
]
