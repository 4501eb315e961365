# utils.py
import json
import logging
import time
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

log = logging.getLogger("Utils")


def load_config(path: Optional[Union[str, Path]]) -> Dict[str, Any]:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def timed(label: Optional[str] = None, level: int = logging.INFO):
    def decorator(func: Callable):
        name = label or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                log.log(level, f"[TIMER] {name} took {time.perf_counter() - started:.3f}s")
        return wrapper
    return decorator
