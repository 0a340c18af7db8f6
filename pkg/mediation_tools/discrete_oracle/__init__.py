from .exact import MAX_SUPPORT, exact_expected_outcome, exact_nie, joint_noise_support

__all__ = [
    "MAX_SUPPORT",
    "exact_expected_outcome",
    "exact_nie",
    "joint_noise_support",
]
