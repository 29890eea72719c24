import logging
import colorlog
from typing import Optional


class SweepLogger:
    """Process-wide console logger for solver traces and verification outcomes.

    Info and debug output is only emitted in verbose mode; warnings and errors always are.
    """

    _instance: Optional['SweepLogger'] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(SweepLogger, cls).__new__(cls)
            cls._instance._setup()
        return cls._instance

    def _setup(self):
        self._verbose = False
        self._logger = logging.getLogger("volsweep")
        self._logger.setLevel(logging.WARNING)
        self._logger.propagate = False
        if self._logger.handlers:
            return

        console_handler = colorlog.StreamHandler()
        formatter = colorlog.ColoredFormatter(
            '%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s%(reset)s',
            datefmt='%Y-%m-%d %H:%M:%S',
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'green',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'red,bg_white',
            }
        )
        console_handler.setFormatter(formatter)
        self._logger.addHandler(console_handler)

    def set_verbose(self, verbose: bool):
        self._verbose = verbose
        self._logger.setLevel(logging.DEBUG if verbose else logging.WARNING)

    @property
    def verbose(self) -> bool:
        return self._verbose

    def debug(self, message: str):
        if self._verbose:
            self._logger.debug(message)

    def info(self, message: str):
        if self._verbose:
            self._logger.info(message)

    def warning(self, message: str):
        self._logger.warning(message)

    def error(self, message: str):
        self._logger.error(message)

    def stage(self, problem: str, message: str):
        self.info(f"{problem}: {message}")

    def iteration(self, problem: str, scheme: str, k: int, delta: float):
        self.debug(f"{problem}: {scheme} iteration {k}, delta {delta:.3e}")

    def verification(self, problem: str, line: str, passed: bool):
        """Failed checks surface as warnings even outside verbose mode."""
        if passed:
            self.debug(f"{problem}: {line}")
        else:
            self.warning(f"{problem}: {line}")


logger = SweepLogger()
