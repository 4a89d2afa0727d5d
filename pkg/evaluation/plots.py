"""
CDF chart for the BLE-only vs hybrid error comparison.

Rendered with matplotlib on the non-interactive Agg backend so it works in
headless runs.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)

CdfTable = Sequence[Tuple[float, float]]


class CdfChart:
    """Step plot of one or more empirical CDF tables."""

    def __init__(self, dpi: int = 150, figsize: Tuple[float, float] = (8.0, 6.0)):
        self.dpi = dpi
        self.figsize = figsize

    def render(
        self,
        curves: Sequence[Tuple[str, CdfTable]],
        save_path: Union[str, Path],
        title: Optional[str] = None,
        x_max: Optional[float] = None,
    ) -> Path:
        """
        Draw each (label, table) as a right-continuous step curve and save it.

        The output format follows the file suffix (png, svg, pdf).
        """
        save_path = Path(save_path)
        fig, ax = plt.subplots(figsize=self.figsize)
        try:
            for label, table in curves:
                xs = [0.0] + [x for x, _ in table]
                ys = [0.0] + [y for _, y in table]
                ax.step(xs, ys, where="post", label=label)
            ax.set_xlabel("Trajectory error (m)")
            ax.set_ylabel("Cumulative proportion")
            ax.set_ylim(0.0, 1.0)
            if x_max is not None:
                ax.set_xlim(0.0, x_max)
            if title:
                ax.set_title(title)
            ax.grid(True, alpha=0.3)
            ax.legend(loc="lower right")
            fig.savefig(save_path, dpi=self.dpi, bbox_inches="tight")
        finally:
            plt.close(fig)
        logger.info("saved CDF chart to %s", save_path)
        return save_path


def plot_error_cdfs(
    ble: CdfTable, hybrid: CdfTable, save_path: Union[str, Path], title: Optional[str] = None
) -> Path:
    return CdfChart().render([("BLE only", ble), ("Hybrid", hybrid)], save_path, title=title)
