import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def criteria_pipeline_path():
    return FIXTURES / "criteria_pipeline.json"


@pytest.fixture
def catalog5_path():
    return FIXTURES / "catalog5.json"


@pytest.fixture
def criteria_flip_path():
    return FIXTURES / "criteria_flip.json"


@pytest.fixture
def catalog_flip_path():
    return FIXTURES / "catalog_flip.json"


@pytest.fixture
def criteria_inconsistent_path():
    return FIXTURES / "criteria_inconsistent.json"


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
