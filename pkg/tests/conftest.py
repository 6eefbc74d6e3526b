import json
from importlib import resources

import pytest
from hypothesis import settings
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

settings.register_profile("ranklab", max_examples=40, deadline=None)
settings.load_profile("ranklab")


def _registry():
    reg = Registry()
    for res in resources.files("ranklab.schemas").iterdir():
        if res.name.endswith(".json"):
            reg = reg.with_resource(res.name, Resource.from_contents(json.loads(res.read_text())))
    return reg


@pytest.fixture(scope="session")
def validate():
    reg = _registry()

    def check(doc, schema_name):
        schema = reg.contents(schema_name)
        Draft202012Validator(schema, registry=reg).validate(doc)
    return check


# one pass/fail line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
