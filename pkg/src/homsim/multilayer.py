"""Transfer-matrix optics for 1-D lossless multilayer dielectric stacks.

Normal incidence, linear polarization, real frequency-independent
refractive indices, vacuum on both sides.  The complex transmission
amplitude t(omega) is the quantity everything downstream consumes.

Phase convention: forward waves carry exp(+i n omega x / c), so
propagation through a layer advances the phase by +n*omega*d/c.  t is
the ratio of the transmitted amplitude at the exit face to the incident
amplitude at the entrance face; free propagation outside the stack is
excluded.  Under this convention the stack's group delay d(arg t)/d(omega)
is positive for passive barriers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class LayerSpec:
    """One homogeneous lossless layer."""

    refractive_index: float
    thickness: float  # meters

    def __post_init__(self):
        if not self.refractive_index > 0:
            raise ValueError(f"refractive index must be > 0, got {self.refractive_index}")
        if not self.thickness > 0:
            raise ValueError(f"layer thickness must be > 0, got {self.thickness}")


@dataclass(frozen=True)
class StackSpec:
    """Ordered layer sequence with implicit vacuum surroundings.

    An empty sequence is a free-space arm: t = 1, r = 0.
    """

    layers: tuple[LayerSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    def __len__(self):
        return len(self.layers)

    def reversed(self):
        return StackSpec(tuple(reversed(self.layers)))


@dataclass(frozen=True)
class TransferCoefficients:
    """Complex transmission/reflection amplitudes at one frequency."""

    transmission: complex
    reflection: complex
    at_frequency: float


@dataclass(frozen=True)
class ComplexSpectrum:
    """A complex-valued function tabulated on an increasing frequency grid."""

    frequencies: np.ndarray  # rad/s, strictly increasing, all > 0
    values: np.ndarray

    def __post_init__(self):
        freq = np.asarray(self.frequencies, dtype=float).copy()
        vals = np.asarray(self.values, dtype=complex).copy()
        if freq.ndim != 1 or freq.size < 2:
            raise ValueError("frequency grid must be 1-D with at least 2 points")
        if vals.shape != freq.shape:
            raise ValueError("values must match the frequency grid point for point")
        if not np.all(freq > 0):
            raise ValueError("all frequencies must be > 0")
        if not np.all(np.diff(freq) > 0):
            raise ValueError("frequencies must be strictly increasing")
        freq.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "frequencies", freq)
        object.__setattr__(self, "values", vals)


def build_quarter_wave_stack(n_layers, n_high, n_low, center_frequency):
    """Alternating quarter-wave stack, high index first.

    Layer j gets thickness d = pi*c / (2 * n_j * omega0), a quarter of
    the in-medium wavelength at ``center_frequency``, which centres the
    stop band there.
    """
    if not (isinstance(n_layers, (int, np.integer)) and n_layers >= 1):
        raise ValueError(f"n_layers must be a positive integer, got {n_layers}")
    if not (n_high > 0 and n_low > 0):
        raise ValueError("refractive indices must be > 0")
    if not center_frequency > 0:
        raise ValueError("center frequency must be > 0")
    layers = []
    for j in range(n_layers):
        n_j = n_high if j % 2 == 0 else n_low
        d_j = np.pi * SPEED_OF_LIGHT / (2.0 * n_j * center_frequency)
        layers.append(LayerSpec(n_j, d_j))
    return StackSpec(tuple(layers))


def _amplitudes(stack, omegas):
    """Vectorized t(omega), r(omega) for a wave incident from the left.

    Builds the 2x2 amplitude transfer matrix as the product of interface
    and propagation factors and reads t = 1/m11, r = m21/m11.
    """
    omegas = np.asarray(omegas, dtype=float)
    if not np.all(omegas > 0):
        raise ValueError("frequencies must be > 0")
    m11 = np.ones(omegas.shape, dtype=complex)
    m12 = np.zeros(omegas.shape, dtype=complex)
    m21 = np.zeros(omegas.shape, dtype=complex)
    m22 = np.ones(omegas.shape, dtype=complex)

    indices = [1.0] + [lay.refractive_index for lay in stack.layers] + [1.0]
    for j, lay in enumerate(stack.layers):
        n_a, n_b = indices[j], indices[j + 1]
        r_ab = (n_a - n_b) / (n_a + n_b)
        inv_t = (n_a + n_b) / (2.0 * n_a)
        # interface n_a -> n_b
        m11, m12 = inv_t * (m11 + m12 * r_ab), inv_t * (m11 * r_ab + m12)
        m21, m22 = inv_t * (m21 + m22 * r_ab), inv_t * (m21 * r_ab + m22)
        # propagation through layer j
        phase = np.exp(-1j * lay.refractive_index * omegas * lay.thickness
                       / SPEED_OF_LIGHT)
        m11 = m11 * phase
        m21 = m21 * phase
        m12 = m12 / phase
        m22 = m22 / phase
    if stack.layers:
        n_a, n_b = indices[-2], indices[-1]
        r_ab = (n_a - n_b) / (n_a + n_b)
        inv_t = (n_a + n_b) / (2.0 * n_a)
        m11, m12 = inv_t * (m11 + m12 * r_ab), inv_t * (m11 * r_ab + m12)
        m21, m22 = inv_t * (m21 + m22 * r_ab), inv_t * (m21 * r_ab + m22)
    return 1.0 / m11, m21 / m11


def transfer_matrix(stack, frequency):
    """Full 2x2 amplitude transfer matrix at one frequency.

    Concatenating two stacks with no vacuum gap multiplies their
    matrices, which the test suite uses as a composition oracle.
    """
    if not frequency > 0:
        raise ValueError("frequency must be > 0")
    omega = np.asarray([float(frequency)])
    m11 = np.ones(1, dtype=complex)
    m12 = np.zeros(1, dtype=complex)
    m21 = np.zeros(1, dtype=complex)
    m22 = np.ones(1, dtype=complex)
    indices = [1.0] + [lay.refractive_index for lay in stack.layers] + [1.0]
    for j, lay in enumerate(stack.layers):
        n_a, n_b = indices[j], indices[j + 1]
        r_ab = (n_a - n_b) / (n_a + n_b)
        inv_t = (n_a + n_b) / (2.0 * n_a)
        m11, m12 = inv_t * (m11 + m12 * r_ab), inv_t * (m11 * r_ab + m12)
        m21, m22 = inv_t * (m21 + m22 * r_ab), inv_t * (m21 * r_ab + m22)
        phase = np.exp(-1j * lay.refractive_index * omega * lay.thickness
                       / SPEED_OF_LIGHT)
        m11, m21 = m11 * phase, m21 * phase
        m12, m22 = m12 / phase, m22 / phase
    if stack.layers:
        n_a, n_b = indices[-2], indices[-1]
        r_ab = (n_a - n_b) / (n_a + n_b)
        inv_t = (n_a + n_b) / (2.0 * n_a)
        m11, m12 = inv_t * (m11 + m12 * r_ab), inv_t * (m11 * r_ab + m12)
        m21, m22 = inv_t * (m21 + m22 * r_ab), inv_t * (m21 * r_ab + m22)
    return np.array([[m11[0], m12[0]], [m21[0], m22[0]]])


def transfer_coefficients(stack, frequency):
    """Complex t and r for a wave incident from the left out of vacuum."""
    if not frequency > 0:
        raise ValueError("frequency must be > 0")
    t, r = _amplitudes(stack, np.asarray([float(frequency)]))
    return TransferCoefficients(transmission=complex(t[0]),
                                reflection=complex(r[0]),
                                at_frequency=float(frequency))


def transmission_spectrum(stack, grid):
    """t(omega) tabulated over a frequency grid."""
    grid = np.asarray(grid, dtype=float)
    t, _ = _amplitudes(stack, grid)
    return ComplexSpectrum(frequencies=grid, values=t)


def spectrum_to_csv(spectrum, path):
    """Write a transmission spectrum as CSV.

    Columns: omega_rad_s, re_t, im_t, abs_t_sq.
    """
    with open(path, "w") as fh:
        fh.write("omega_rad_s,re_t,im_t,abs_t_sq\n")
        for w, v in zip(spectrum.frequencies, spectrum.values):
            fh.write(f"{float(w)!r},{float(v.real)!r},{float(v.imag)!r},"
                     f"{float(abs(v) ** 2)!r}\n")


def stack_from_mapping(data):
    """Build a StackSpec from parsed stack-description data.

    Accepts either ``layers = [{n, d_m}, ...]`` or
    ``quarter_wave = {N, n_high, n_low, omega0}``.  An empty mapping is a
    free-space arm.
    """
    if not isinstance(data, dict):
        raise ValueError(f"stack description must be a table, got {type(data).__name__}")
    unknown = set(data) - {"layers", "quarter_wave"}
    if unknown:
        raise ValueError(f"unknown stack keys: {sorted(unknown)}")
    if "layers" in data and "quarter_wave" in data:
        raise ValueError("give either 'layers' or 'quarter_wave', not both")
    if "layers" in data:
        layers = []
        for k, item in enumerate(data["layers"]):
            extra = set(item) - {"n", "d_m"}
            if extra:
                raise ValueError(f"layers[{k}]: unknown keys {sorted(extra)}")
            if "n" not in item or "d_m" not in item:
                raise ValueError(f"layers[{k}]: need both 'n' and 'd_m'")
            layers.append(LayerSpec(float(item["n"]), float(item["d_m"])))
        return StackSpec(tuple(layers))
    if "quarter_wave" in data:
        qw = data["quarter_wave"]
        extra = set(qw) - {"N", "n_high", "n_low", "omega0"}
        if extra:
            raise ValueError(f"quarter_wave: unknown keys {sorted(extra)}")
        missing = {"N", "n_high", "n_low", "omega0"} - set(qw)
        if missing:
            raise ValueError(f"quarter_wave: missing keys {sorted(missing)}")
        return build_quarter_wave_stack(int(qw["N"]), float(qw["n_high"]),
                                        float(qw["n_low"]), float(qw["omega0"]))
    return StackSpec()


def load_stack_file(path):
    """Read a stack description file (TOML syntax)."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return stack_from_mapping(data)
