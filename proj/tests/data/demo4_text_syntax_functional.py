import logging

from . import config
from .exc import format_error_msg, format_error_msg_verbose

log = logging.getLogger(__name__)


def catch_errors(callback, soft_fail=False):
    def _fn(frame, cache_entry, hooks, frame_state):
        try:
            return callback(frame, cache_entry, hooks, frame_state)
        except Exception as e:
            if not config.suppress_errors:
                raise
<<<<<<< a
            log.info("converting frame raised error, suppressing error")
=======

            # Suppress the error.  NB: It's very important to do the
            # suppression logging HERE, where the actual suppression
            # happens. Previously it was somewhere else and so it was
            # possible to accidentally not log at all.
            record_filename = getattr(e, "record_filename", None)
            code = frame.f_code
            if config.is_fbcode():
                from torch._dynamo.fb.logging import (  # type: ignore[import]
                    log_dynamo_suppress_errors,
                )

                error_msg = format_error_msg_verbose(e, code, record_filename, frame)
                log_dynamo_suppress_errors(
                    code.co_name, code.co_filename, code.co_firstlineno, error_msg
                )
            else:
                error_msg = format_error_msg(e, code, record_filename, frame)

            if soft_fail:
                log.info(error_msg, exc_info=True)
            else:
                log.warning(error_msg, exc_info=True)
>>>>>>> b
        return None

    return _fn
