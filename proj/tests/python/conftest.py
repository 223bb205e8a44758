import json
import os
import pathlib

import pytest

SCHEMAS = pathlib.Path(
    os.environ.get("ADDCHAIN_SCHEMAS", pathlib.Path(__file__).resolve().parents[2] / "docs" / "schemas")
)


@pytest.fixture(scope="session")
def schema():
    def load(name):
        return json.loads((SCHEMAS / f"{name}.schema.json").read_text())

    return load
