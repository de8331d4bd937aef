from pathlib import Path

import pytest

from vimotest.analyzer import resolve
from vimotest.model import TestScenario, TestSuite
from vimotest.parser import parse_test_suite, parse_view_model

# model dataclasses, not test classes
TestScenario.__test__ = False
TestSuite.__test__ = False

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus" / "taskmanager"
GOLDENS = ROOT / "goldens"

VMDSL_PATH = CORPUS / "task_list.vmdsl"
VMTEST_PATH = CORPUS / "task_list_tests.vmtest"


@pytest.fixture(scope="session")
def corpus_desc():
    desc, diags = parse_view_model(VMDSL_PATH.read_text(), str(VMDSL_PATH))
    assert desc is not None, [d.render() for d in diags]
    return desc


@pytest.fixture(scope="session")
def corpus_suite():
    suite, diags = parse_test_suite(VMTEST_PATH.read_text(), str(VMTEST_PATH))
    assert suite is not None, [d.render() for d in diags]
    return suite


@pytest.fixture(scope="session")
def corpus_linked(corpus_suite, corpus_desc):
    linked, diags = resolve(corpus_suite, corpus_desc)
    assert linked is not None, [d.render() for d in diags]
    return linked
