"""
Regenerate the committed stddev cubics in proximity/sensor.py.

    python scripts/fit_default_stddev.py
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from proximity.calibration import fit_stddev_cubic  # noqa: E402

# (distance m, stddev m): <= 5 cm below 2.5 m, nearing 20 cm at 3.5 m
DARK_ENVELOPE = [(0.5, 0.02), (2.0, 0.03), (2.5, 0.05), (3.5, 0.20)]
LIGHT_ENVELOPE = [(0.5, 0.015), (2.0, 0.02), (2.5, 0.03), (3.5, 0.10)]


def main() -> None:
    for name, samples in (("DEFAULT_STDDEV_CUBIC", DARK_ENVELOPE), ("LIGHT_SURFACE_STDDEV_CUBIC", LIGHT_ENVELOPE)):
        fit = fit_stddev_cubic(samples)
        print(f"{name} = (")
        for c in fit.coefficients:
            print(f"    {c!r},")
        print(f")  # residual RMS {fit.residual_rms:.2e}")


if __name__ == "__main__":
    main()
