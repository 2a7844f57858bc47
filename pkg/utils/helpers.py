import json

import pandas as pd

from algebra.verdicts import any_failed


def tri_state(value):
    """yes / no / unknown for flags that a small catalog cannot settle"""
    if value is None:
        return "unknown"
    return "yes" if value else "no"


def frame_text(frame: pd.DataFrame, empty="(none)"):
    """Render a DataFrame as a left-aligned text table"""
    if frame is None or frame.empty:
        return empty
    return frame.to_string(index=False)


def section(title, body):
    return f"== {title} ==\n{body}"


def to_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2, default=str)


def emit(config, payload, text):
    """Print the report in the configured format"""
    print(to_json(payload) if config.format == "json" else text)


def exit_code(results):
    """1 when any check failed, else 0"""
    return 1 if any_failed(results) else 0
