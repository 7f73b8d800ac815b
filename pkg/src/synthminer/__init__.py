"""Incremental discovery of sound free-choice workflow nets from event logs."""

from .eventlog import EventLog, parse_csv, parse_xes
from .miner import DiscoveryConfig, discover
from .ordering import OrderingStrategy, make_order
from .petri import WorkflowNet, is_free_choice, is_sound, soundness
from .quality import evaluate

__all__ = [
    "EventLog",
    "parse_csv",
    "parse_xes",
    "DiscoveryConfig",
    "discover",
    "OrderingStrategy",
    "make_order",
    "WorkflowNet",
    "is_free_choice",
    "is_sound",
    "soundness",
    "evaluate",
]

__version__ = "0.1.0"
