# legendrian.py
import os
import sys
import logging
import logging.handlers

from src.cli import EXIT_INVALID, run
from src.utils import load_config

DEFAULT_CONFIG = "config.json"

REQUIRED_SECTIONS = {
    "search": ["max_depth", "max_states", "orbit_limit", "allow_births"],
    "moves": ["destabilize_window"],
    "slopes": ["r_margin", "stability_step"],
    "svg": ["x_step", "z_step", "margin", "stroke_width", "palette"],
    "grid": ["p_min", "p_max", "q_max", "m_max"],
}


def validate_config(cfg):
    for param in ("log_file", "log_level"):
        if param not in cfg:
            raise RuntimeError(f"Missing required parameter: {param}")
    for section, keys in REQUIRED_SECTIONS.items():
        if section not in cfg:
            raise RuntimeError(f"Missing required parameter: {section}")
        for key in keys:
            if key not in cfg[section]:
                raise RuntimeError(f"Missing required parameter: {section}.{key}")


def setup_logging(log_file, level="INFO"):
    logger = logging.getLogger()
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    console_fmt = logging.Formatter("[%(asctime)s] %(levelname)s %(message)s", "%Y-%m-%d %H:%M:%S")
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(console_fmt)
    logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.handlers.RotatingFileHandler(
                log_file, maxBytes=10*1024*1024, backupCount=5
            )
            file_fmt = logging.Formatter(
                "%(asctime)s | %(levelname)8s | %(name)20s | %(message)s",
                "%Y-%m-%d %H:%M:%S"
            )
            file_handler.setFormatter(file_fmt)
            logger.addHandler(file_handler)
        except Exception as e:
            logging.error(f"File logging failed: {str(e)}")


def _config_path(argv):
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return DEFAULT_CONFIG if os.path.exists(DEFAULT_CONFIG) else None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        path = _config_path(argv)
        config = load_config(path)
        if path:
            validate_config(config)
    except Exception as e:
        setup_logging(None)
        logging.critical(f"Configuration error: {str(e)}")
        print(f"error=configuration: {e}")
        return EXIT_INVALID

    setup_logging(config.get("log_file"), config.get("log_level", "INFO"))
    logging.debug("🚀 Starting legendrian")
    try:
        return run(argv, config)
    except Exception as e:
        logging.critical(f"Unhandled error: {str(e)}", exc_info=True)
        print(f"error=internal: {' '.join(str(e).split())}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
