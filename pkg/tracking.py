import logging

logger = logging.getLogger(__name__)


def _format_fields(fields):
    return " ".join(f"{key}={fields[key]}" for key in sorted(fields))


def _track(event, level=logging.INFO, **fields):
    """Write one structured log line; tracking never raises"""
    try:
        logger.log(level, f"{event} {_format_fields(fields)}".rstrip())
    except Exception as e:
        logger.error(f"Error tracking {event}: {type(e).__name__}: {str(e)}")


def track_calculation(mode, **fields):
    """Track when a computation starts or finishes"""
    _track("calculation", mode=mode, **fields)


def track_oracle_trial(name, trial):
    """Track one oracle trial"""
    _track("oracle_trial", name=name, seed=trial.seed, matrix=trial.matrix_hash,
           weights=list(trial.weights), count=trial.count, retried=trial.retried)


def track_skip(name, reason):
    """Track when an oracle does not apply to the input"""
    _track("oracle_skipped", name=name, reason=reason)


def track_error(error_type, error_message):
    """Track when errors occur"""
    _track("error", level=logging.ERROR, type=error_type, message=error_message)
