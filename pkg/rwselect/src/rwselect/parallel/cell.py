import threading
from typing import Optional, Tuple

CellValue = Tuple[float, Optional[int]]

EMPTY: CellValue = (float("-inf"), None)


def beats(bid: float, index: int, current: CellValue) -> bool:
    """Strictly greater bid, or an equal bid from a lower index."""
    cur_bid, cur_index = current
    if bid > cur_bid:
        return True
    return bid == cur_bid and cur_index is not None and index < cur_index


class SharedMaxCell:
    """
    Shared (bid, index) cell. compare_and_set is linearizable; `updates`
    counts successful replacements.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._value: CellValue = EMPTY
        self.updates = 0

    def read(self) -> CellValue:
        with self._lock:
            return self._value

    def compare_and_set(self, expected: CellValue, new: CellValue) -> bool:
        with self._lock:
            if self._value != expected:
                return False
            self._value = new
            self.updates += 1
            return True

    def offer(self, bid: float, index: int) -> bool:
        """
        Write (bid, index) until the cell holds something at least as good.
        Returns True when this offer's write is the one that landed.
        """
        while True:
            current = self.read()
            if not beats(bid, index, current):
                return False
            if self.compare_and_set(current, (bid, index)):
                return True
