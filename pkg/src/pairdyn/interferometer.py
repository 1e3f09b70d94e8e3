"""Two-mode interferometer amplitudes for single particles and pairs.

Idealized Mach-Zehnder algebra: a 50/50 splitter, a phase phi on one arm,
a second splitter, detectors D1 and D2.  Pairs traverse the device either
as two independent particles or as a tightly bound pair that picks up the
arm phase twice.  The bound pair only has a meaningful coincidence
amplitude at D1 x D1; its other events are not modelled here.
"""

from dataclasses import dataclass

import numpy as np

SINGLE = "single"
INDEPENDENT_PAIR = "independent_pair"
BOUND_PAIR = "bound_pair"
MODES = (SINGLE, INDEPENDENT_PAIR, BOUND_PAIR)


@dataclass(frozen=True)
class MziAmplitudeSet:
    """Detection amplitudes of one interferometer pass.

    ``amplitudes`` maps event labels ("D1", "D1xD2", ...) to complex
    amplitudes evaluated at the phase(s) passed to :func:`mzi_amplitudes`.
    """

    mode: str
    amplitudes: dict

    def probabilities(self) -> dict:
        return {label: np.abs(a) ** 2 for label, a in self.amplitudes.items()}

    def total_probability(self):
        return sum(self.probabilities().values())


def mzi_amplitudes(mode: str, phi) -> MziAmplitudeSet:
    """Closed-form detection amplitudes as a function of the arm phase.

    Parameters
    ----------
    mode : str
        "single", "independent_pair" or "bound_pair".
    phi : float or ndarray
        Arm phase(s).

    Notes
    -----
    Single-particle amplitudes are i(1 + e^{i phi})/2 at D1 and
    (1 - e^{i phi})/2 at D2; independent pairs multiply them.  The bound
    pair acquires e^{i 2 phi} on the phase arm, giving the D1 x D1
    coincidence amplitude -(1 + e^{i 2 phi})/4, periodic in pi rather
    than 2 pi.
    """
    phi = np.asarray(phi, dtype=float)
    e = np.exp(1j * phi)
    if mode == SINGLE:
        amps = {
            "D1": 0.5j * (1.0 + e),
            "D2": 0.5 * (1.0 - e),
        }
    elif mode == INDEPENDENT_PAIR:
        a1 = 0.5j * (1.0 + e)
        a2 = 0.5 * (1.0 - e)
        amps = {
            "D1xD1": a1 * a1,
            "D1xD2": a1 * a2,
            "D2xD1": a2 * a1,
            "D2xD2": a2 * a2,
        }
    elif mode == BOUND_PAIR:
        amps = {"D1xD1": -0.25 * (1.0 + e * e)}
    else:
        raise ValueError(f"unknown interferometer mode {mode!r}")
    if phi.ndim == 0:
        amps = {k: complex(v) for k, v in amps.items()}
    return MziAmplitudeSet(mode=mode, amplitudes=amps)
