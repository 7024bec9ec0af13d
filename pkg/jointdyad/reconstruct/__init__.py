from jointdyad.reconstruct.reconstruct import (
    DEFAULT_THRESHOLD,
    ReconstructionReport,
    reconstruct,
)

__all__ = ["DEFAULT_THRESHOLD", "ReconstructionReport", "reconstruct"]
