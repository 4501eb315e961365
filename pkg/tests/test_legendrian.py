import json
import logging
import logging.handlers

import pytest

import legendrian
from src.cli import EXIT_INVALID, EXIT_OK


@pytest.fixture
def config_file(tmp_path, small_config):
    cfg = {"log_file": str(tmp_path / "legendrian.log"), "log_level": "DEBUG", **small_config}
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    yield path, cfg
    for handler in logging.getLogger().handlers[:]:
        if isinstance(handler, logging.handlers.RotatingFileHandler):
            handler.close()
            logging.getLogger().removeHandler(handler)


def test_validate_config_accepts_shipped_layout(config_file):
    _, cfg = config_file
    legendrian.validate_config(cfg)


@pytest.mark.parametrize("drop, missing", [
    (("log_level",), "log_level"),
    (("search",), "search"),
    (("search", "max_states"), "search.max_states"),
    (("svg", "palette"), "svg.palette"),
])
def test_validate_config_names_missing_parameter(config_file, drop, missing):
    _, cfg = config_file
    cfg = json.loads(json.dumps(cfg))
    if len(drop) == 1:
        del cfg[drop[0]]
    else:
        del cfg[drop[0]][drop[1]]
    with pytest.raises(RuntimeError, match=f"Missing required parameter: {missing}$"):
        legendrian.validate_config(cfg)


def test_main_runs_command_with_config(config_file, capsys):
    path, cfg = config_file
    code = legendrian.main(["--config", str(path), "tbmax", "-p", "0", "-q", "1", "-m", "2"])
    assert code == EXIT_OK
    assert "tb_max=0" in capsys.readouterr().out
    assert "Running tbmax" in open(cfg["log_file"], encoding="utf-8").read()


def test_main_reports_bad_config(tmp_path, capsys):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"log_file": None}), encoding="utf-8")
    code = legendrian.main([f"--config={path}", "tbmax", "-p", "0", "-q", "1", "-m", "2"])
    assert code == EXIT_INVALID
    assert capsys.readouterr().out.startswith("error=configuration: Missing required parameter: log_level")


def test_main_reports_missing_config_file(tmp_path, capsys):
    code = legendrian.main(["--config", str(tmp_path / "absent.json"), "tbmax", "-p", "0", "-q", "1", "-m", "0"])
    assert code == EXIT_INVALID
    assert capsys.readouterr().out.startswith("error=configuration:")
