"""Internal unit system (Hartree atomic units) and SI conversions.

Everything inside the simulation uses hbar = m_e = a0 = E_h = 1, which keeps
the span from angstroms to micrometers and from neV to meV well inside double
precision and removes hbar from the propagator entirely.

All constants are pinned CODATA-2018 values so results are reproducible
bit-for-bit regardless of the installed scipy version.
"""

from __future__ import annotations

from dataclasses import dataclass

# --- CODATA-2018 constants (SI) ---------------------------------------------
BOHR_RADIUS_M = 5.29177210903e-11       # Bohr radius a0
HARTREE_J = 4.3597447222071e-18         # Hartree energy E_h
HBAR_JS = 1.054571817e-34               # reduced Planck constant
ELECTRON_MASS_KG = 9.1093837015e-31     # electron mass m_e
ATOMIC_MASS_KG = 1.66053906660e-27      # atomic mass constant u
EV_J = 1.602176634e-19                  # electron volt (exact, SI-2019)

# Derived unit scales (SI value of one internal unit).
ATOMIC_TIME_S = HBAR_JS / HARTREE_J                 # 2.4188843265857e-17 s
ATOMIC_VELOCITY_MPS = BOHR_RADIUS_M / ATOMIC_TIME_S  # 2.18769126364e6 m/s
AMU_PER_ME = ATOMIC_MASS_KG / ELECTRON_MASS_KG       # 1822.888486209

#: SI value of one internal unit, per supported dimension.
_UNIT_SI = {
    "length": BOHR_RADIUS_M,
    "time": ATOMIC_TIME_S,
    "velocity": ATOMIC_VELOCITY_MPS,
    "mass": ELECTRON_MASS_KG,
    "energy": HARTREE_J,
    "frequency": 1.0 / ATOMIC_TIME_S,          # angular frequency, rad/s
    "c4": HARTREE_J * BOHR_RADIUS_M**4,        # energy * length^4
}

DIMENSIONS = frozenset(_UNIT_SI)


@dataclass(frozen=True)
class PhysicalQuantity:
    """A value in SI units tagged with one of the supported dimensions."""

    value: float
    dimension: str

    def __post_init__(self):
        if self.dimension not in _UNIT_SI:
            raise_unsupported(self.dimension)


def raise_unsupported(dimension: str):
    from .errors import ConfigurationError

    raise ConfigurationError(
        f"unsupported dimension {dimension!r}; supported: {sorted(_UNIT_SI)}"
    )


def to_internal(q: PhysicalQuantity) -> float:
    """Convert an SI quantity to internal (atomic) units."""
    return si_to_au(q.value, q.dimension)


def from_internal(value: float, dimension: str) -> PhysicalQuantity:
    """Convert an internal-unit value back to SI."""
    return PhysicalQuantity(au_to_si(value, dimension), dimension)


def si_to_au(value: float, dimension: str) -> float:
    if dimension not in _UNIT_SI:
        raise_unsupported(dimension)
    return value / _UNIT_SI[dimension]


def au_to_si(value: float, dimension: str) -> float:
    if dimension not in _UNIT_SI:
        raise_unsupported(dimension)
    return value * _UNIT_SI[dimension]


# --- common lab-unit helpers --------------------------------------------------

def mass_u_to_au(mass_u: float) -> float:
    """Particle mass from atomic mass units to electron masses."""
    return mass_u * AMU_PER_ME


def energy_ev_to_au(energy_ev: float) -> float:
    return energy_ev * EV_J / HARTREE_J


def c4_evA4_to_au(c4_ev_angstrom4: float) -> float:
    """Surface interaction strength from eV*Angstrom^4 to Hartree*a0^4."""
    angstrom_au = 1e-10 / BOHR_RADIUS_M
    return c4_ev_angstrom4 * (EV_J / HARTREE_J) * angstrom_au**4


def length_angstrom_to_au(length_angstrom: float) -> float:
    return length_angstrom * 1e-10 / BOHR_RADIUS_M
