import pkgutil
import importlib
import doctest
import pyquasiiso


def test_docstrings():
    for _, module_name, _ in pkgutil.walk_packages(pyquasiiso.__path__, prefix=f"{pyquasiiso.__name__}."):
        module = importlib.import_module(module_name)
        test = doctest.testmod(module, optionflags=doctest.NORMALIZE_WHITESPACE)
        assert not test.failed, f"DocTest failed for module {module.__name__}"
