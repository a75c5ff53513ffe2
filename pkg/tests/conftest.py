import numpy as np
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random U(2) via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q @ np.diag(r.diagonal() / np.abs(r.diagonal()))


def random_drive(rng: np.random.Generator):
    """Random drive triple over the range the model is exercised in."""
    from hologate import DriveParams

    return DriveParams(
        omega_rabi=float(rng.uniform(0.0, 2.0)),
        detuning=float(rng.uniform(-1.0, 2.0)),
        omega_drive=float(rng.uniform(0.5, 2.0)),
    )
