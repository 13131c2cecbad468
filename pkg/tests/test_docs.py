import doctest
import pathlib

import pytest

import wqbern.cli
import wqbern.exactq

README = pathlib.Path(__file__).resolve().parent.parent / "README.md"


@pytest.mark.parametrize("module", [wqbern.exactq, wqbern.cli], ids=lambda m: m.__name__)
def test_module_doctests(module):
    assert doctest.testmod(module).failed == 0


@pytest.mark.skipif(not README.exists(), reason="README not shipped")
def test_readme_examples():
    assert doctest.testfile(str(README), module_relative=False, globs={}).failed == 0
