"""
Monitoring Module

Handles structured logging: every event is one JSON object on stderr,
so stdout stays free for JSON/CSV reports.
"""

import json
import logging
from typing import Any, Dict, Optional

# Configure basic logging
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger("beilab")


def configure_logging(level: str = "INFO") -> None:
    """Sets the log level for beilab events (e.g. from Settings.log_level)."""
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))


def log_event(event_name: str, details: Optional[Dict[str, Any]] = None) -> None:
    """
    Logs a structured event in JSON format.
    Args:
        event_name (str): The name of the event.
        details (Dict[str, Any], optional): Additional details for the event. Defaults to None.
    """
    log_data: Dict[str, Any] = {"event": event_name}
    if details:
        log_data.update(details)
    logger.info(json.dumps(log_data, default=str))


def alert(summary: Dict[str, Any], flags: Dict[str, Any]) -> None:
    """
    Logs the outcome of a sweep. Any raised flag (a violation of a theorem-backed
    bound, or of the open subadditivity conjecture) is logged as a warning.
    Args:
        summary (Dict[str, Any]): Sweep parameters and counts.
        flags (Dict[str, Any]): Named boolean conditions found by the sweep.
    """
    raised = {name: value for name, value in flags.items() if value}
    if raised:
        logger.warning(json.dumps({"alert_condition": True, "summary": summary, "flags": raised}, default=str))
    else:
        logger.info(json.dumps({"alert_condition": False, "summary": summary}, default=str))
