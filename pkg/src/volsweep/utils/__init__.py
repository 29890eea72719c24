from .logger import SweepLogger, logger

__all__ = ["SweepLogger", "logger"]
