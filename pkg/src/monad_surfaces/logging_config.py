"""Structured logging for searches, certificates and the CLI, using structlog.

Stdout belongs to the CLI's JSON reports, so ``--log-stderr`` moves the log
stream to stderr. Trials run inside :func:`trial_context`, which binds
``trial_index`` and ``seed`` to every event emitted while the trial runs;
pool workers add their process id. Numpy scalars and arrays in event fields
are turned into plain Python values before rendering.

Usage:
    setup_logging(log_level="INFO", json_logs=True, to_stderr=True)
    logger = get_logger(__name__)
    with trial_context(trial_index=17, seed=4242):
        logger.info("search.trial.accepted", stage="CERTIFIED")
"""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING, Any

import numpy as np
import structlog
from structlog.contextvars import bound_contextvars
from structlog.processors import CallsiteParameter, CallsiteParameterAdder

if TYPE_CHECKING:
    from collections.abc import MutableMapping
    from contextlib import AbstractContextManager

# Libraries whose debug output drowns the trial events.
QUIET_LOGGERS = ("sympy", "statemachine")


def _numpy_to_builtin(
    _logger: Any, _method: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


def setup_logging(
    log_level: str = "INFO", json_logs: bool = False, to_stderr: bool = False
) -> None:
    """Route structlog events through one stdlib handler.

    Args:
        log_level: Standard Python log level string (DEBUG, INFO, WARNING, etc.)
        json_logs: One JSON object per event, for batch searches.
        to_stderr: Log to stderr so stdout carries only the JSON report.
    """
    shared_processors: list[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        CallsiteParameterAdder([CallsiteParameter.PROCESS]),
        _numpy_to_builtin,
    ]

    renderer: structlog.types.Processor
    if json_logs:
        renderer = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=not to_stderr and sys.stdout.isatty())

    structlog.configure(
        processors=[*shared_processors, structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    handler = logging.StreamHandler(sys.stderr if to_stderr else sys.stdout)
    handler.setFormatter(structlog.stdlib.ProcessorFormatter(
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    ))

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.addHandler(handler)
    root_logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)


def trial_context(trial_index: int, seed: int) -> AbstractContextManager[Any]:
    """Bind the trial's index and seed to every event logged inside the block."""
    return bound_contextvars(trial_index=trial_index, seed=seed)


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)
