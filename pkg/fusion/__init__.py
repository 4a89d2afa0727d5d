"""
Final-stage fusion of the BLE track with proximity estimates, and the per-tick
orchestration of the hybrid algorithm.
"""

from fusion.hybrid import (
    Deployment,
    HybridOutput,
    LocalizationMode,
    fuse,
    hybrid_step,
    track,
)

__all__ = ["Deployment", "HybridOutput", "LocalizationMode", "fuse", "hybrid_step", "track"]
