import json
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from os import path
from textwrap import dedent

from ..utils import PACKAGE_DIR


class CheckKind(Enum):
    # Golden checks compare computed tables against the worked examples stored as fixtures
    GOLDEN = "golden"
    # Property checks test an invariant exhaustively or on seeded random samples
    PROPERTY = "property"


@dataclass(frozen=True)
class CheckResult:
    kind: str
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind, "name": self.name, "passed": self.passed,
            "detail": self.detail}


class AbstractCheck(ABC):
    """A named verification that yields one or more CheckResults.

    Subclasses are configured by the class constants `kind` and `name`; the finder in
    this package indexes every concrete subclass in the modules next to this one."""
    kind = None
    name = None
    # Position in the report, within its kind
    order = 0

    def __init__(self, config, seed=None):
        self.config = config
        self.seed = config.seed if seed is None else seed
        self.rng = random.Random(f"{self.seed}:{self.name}")

    @classmethod
    def desc(cls): return dedent(cls.__doc__ or "").strip()

    @classmethod
    def as_row(cls):
        return {"kind": cls.kind.value, "name": cls.name, "desc": cls.desc()}

    def result(self, label, passed, detail=""):
        return CheckResult(self.kind.value, f"{self.name}: {label}" if label else self.name,
            bool(passed), detail)

    @abstractmethod
    def run(self):
        """Returns a list of CheckResult."""
        raise NotImplementedError


class AbstractGoldenCheck(AbstractCheck):
    kind = CheckKind.GOLDEN
    # Basename of the JSON file under gsdescent/fixtures/
    fixture = None

    @classmethod
    def load_fixture(cls):
        with open(path.join(PACKAGE_DIR, "fixtures", f"{cls.fixture}.json"), "r") as f:
            return json.load(f)


class AbstractPropertyCheck(AbstractCheck):
    kind = CheckKind.PROPERTY
