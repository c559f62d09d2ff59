"""Accelerometer-gesture robot teaching toolkit: window segmentation,
statistical and neural recognizers, posture detection, workspace geometry,
force guard, simulated controller, teach session and gateway."""

__version__ = "0.1.0"
