from .cell import SharedMaxCell
from .executor import ParallelSelector, contention_report, select_log_bid_parallel

__all__ = ["ParallelSelector", "SharedMaxCell", "contention_report", "select_log_bid_parallel"]
