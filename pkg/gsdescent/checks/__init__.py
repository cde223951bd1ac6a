from fnmatch import fnmatch
from glob import glob
from importlib import import_module
from inspect import getmembers
from os import path

from .abstract import AbstractCheck, CheckKind, CheckResult

KIND_ORDER = {CheckKind.GOLDEN: 0, CheckKind.PROPERTY: 1}


def _check_modules(base_path):
    for py_file in sorted(glob(path.join(base_path, '*.py'))):
        stem = path.splitext(path.basename(py_file))[0]
        if stem.startswith('__') or stem.startswith('abstract'): continue
        yield import_module('.' + stem, package=__name__)


def _as_kind(kind):
    if kind is None or isinstance(kind, CheckKind): return kind
    if isinstance(kind, str): return CheckKind(kind)
    raise RuntimeError("kind must be `str` or `CheckKind`")


class CheckFinder:
    _index = None
    BASE_PATH = path.dirname(__file__)

    def _create_index(self):
        """Collects every named, concrete check class in this package, sorted golden first,
        then by each class's `order`."""
        seen = set()
        for mod in _check_modules(self.BASE_PATH):
            for attr, obj in getmembers(mod, lambda o: isinstance(o, type)):
                if attr.startswith('_') or attr.startswith('Abstract'): continue
                if not issubclass(obj, AbstractCheck) or obj.name is None: continue
                seen.add(obj)
        self._index = sorted(seen, key=lambda c: (KIND_ORDER[c.kind], c.order, c.name))

    # Built once, on first access
    @property
    def index(self):
        if self._index is None: self._create_index()
        return self._index

    def find_checks(self, name_glob=None, kind=None):
        """Check classes whose name matches `name_glob` and whose kind is `kind`; either
        filter may be omitted. `kind` is a `CheckKind` or its string value."""
        kind = _as_kind(kind)
        return [check for check in self.index
            if (name_glob is None or fnmatch(check.name, name_glob))
            and (kind is None or check.kind is kind)]


# We create one global instance of the above class
_finder = CheckFinder()

# Export this prebound method
find_checks = _finder.find_checks
