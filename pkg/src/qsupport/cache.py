"""On-disk persistence of KL columns between CLI runs."""

import json
import logging
import os
import tempfile

FORMAT_VERSION = 1
ENV_VAR = "QSUPPORT_CACHE"

log = logging.getLogger(__name__)


def default_path():
    return os.environ.get(ENV_VAR) or None


def _header(table):
    ctx = table.context
    return {"format_version": FORMAT_VERSION, "type": ctx["type"], "rank": ctx["rank"], "ell": ctx["ell"]}


def load(path, table):
    """Warm ``table`` from ``path``. Returns True if entries were used.

    A missing file is a cold start; a corrupt file or a header for a different
    context is logged and ignored, never fatal.
    """
    if not path or not os.path.exists(path):
        return False
    try:
        with open(path) as fh:
            data = json.load(fh)
        header = data["header"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring unreadable KL cache %s: %s", path, exc)
        return False
    if header != _header(table):
        log.warning("ignoring KL cache %s: header %s does not match %s", path, header, _header(table))
        return False
    try:
        return table.load_json(data["table"])
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt KL cache %s: %s", path, exc)
        table.clear()
        return False


def save(path, table):
    if not path:
        return
    payload = {"header": _header(table), "table": table.to_json()}
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qsupport-cache-")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
