"""
Near-1 error constant management
"""

import logging
import threading
from typing import Callable, Dict, Optional, Tuple

logger = logging.getLogger(__name__)

CalibrationFn = Callable[[float, float], float]


class NearOneCalibration:
    """
    Singleton cache of the error constant K used by the near-1 asymptotic
    value of zero-balanced F(a, b; a+b; x)

    K is measured the first time a parameter pair needs it and reused for
    the rest of the process. Keys are symmetric in (a, b).
    """

    _instance: Optional["NearOneCalibration"] = None
    _constants: Dict[Tuple[float, float], float] = None
    _lock: threading.Lock = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._constants = {}
            cls._instance._lock = threading.Lock()
        return cls._instance

    @staticmethod
    def _key(a: float, b: float) -> Tuple[float, float]:
        return (a, b) if a <= b else (b, a)

    def constant(self, a: float, b: float, calibrate: CalibrationFn) -> float:
        """
        Get K for (a, b), measuring it with calibrate(a, b) on first use

        Args:
            a: First parameter
            b: Second parameter
            calibrate: Function measuring K

        Returns:
            The cached constant
        """
        key = self._key(a, b)
        with self._lock:
            k = self._constants.get(key)
            if k is None:
                k = float(calibrate(*key))
                self._constants[key] = k
                logger.info("Calibrated near-1 constant K=%.3e for a=%g, b=%g", k, *key)
        return k

    def is_calibrated(self, a: float, b: float) -> bool:
        """Check if K is already known for (a, b)"""
        return self._key(a, b) in self._constants

    def snapshot(self) -> Dict[Tuple[float, float], float]:
        with self._lock:
            return dict(self._constants)

    def clear(self) -> None:
        with self._lock:
            self._constants.clear()


# Create singleton instance
near_one_calibration = NearOneCalibration()
