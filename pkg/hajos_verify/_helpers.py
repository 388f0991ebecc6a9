"""Define helper functions and exceptions used by classes in this module."""

import logging
import re
import time
from functools import wraps


def stage_log(stage_logger=None):
    """Log a verification stage for the wrapped function.

    This will wrap any function whose first argument is a graph with calls to `logger.debug()` displaying the stage
    name, the graph being processed, the elapsed time and a summary of the result.  This obeys the log level set in
    logging, so if the level is not set to "DEBUG", no messages will be logged.

    :param obj stage_logger: a logging.Logger to use for logging messages.
    """
    def decorator(func):
        """Wrap the actual decorator so a reference to the function can be returned."""
        @wraps(func)
        def log_stage(*args, **kwargs):
            """Decorate the wrapped function."""
            # Make sure stage_logger was set correctly
            if not isinstance(stage_logger, logging.Logger):
                raise Exception("stage_log: No logging.Logger instance provided")

            # Try to get rid of surrounding underscores and then upcase function name
            stage_name = func.__name__
            match = re.search(r"^_*(\w+?)_*$", stage_name)
            if match:
                stage_name = match.group(1).upper()

            graph = kwargs.get("g", args[0] if args else None)
            stage_logger.debug(f"Running {stage_name} on graph: {_describe(graph)}")

            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as exc:
                stage_logger.debug(f"{stage_name} raised {type(exc).__name__}: {exc}")
                # Re-raise the original exception
                raise exc

            stage_logger.debug(f"{stage_name} finished in {time.perf_counter() - start:.6f}s")
            stage_logger.debug(f"{stage_name} result: {result!r}")
            return result
        return log_stage
    return decorator


def _describe(graph):
    """Return a short printable form of a graph argument for log messages."""
    to_graph6 = getattr(graph, "to_graph6", None)
    if callable(to_graph6):
        try:
            return to_graph6()
        except GraphError:
            pass
    return repr(graph)


def iter_bits(mask):
    """Yield the indices of the set bits of *mask* in ascending order.

    :param int mask: A non-negative integer bit-set
    :return iter: The positions of the one bits
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GraphError(Exception):
    """Serve as a generic Exception indicating an invalid graph construction."""


class Graph6Error(GraphError):
    """A graph6 record could not be decoded."""


class PreconditionError(Exception):
    """An operation was called with arguments that break its documented precondition."""


class HeuristicError(Exception):
    """A decomposition heuristic reached a state its preconditions rule out."""


class SearchAbortedError(Exception):
    """The exact search was cancelled or hit its node limit before deciding."""


class NotEulerianError(Exception):
    """A graph handed to the verifier is not even, not connected or has no edges."""
