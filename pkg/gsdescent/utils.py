from os import path
from click import echo, secho

PACKAGE_DIR = path.dirname(__file__)

TRUE_WORDS = frozenset(("y", "yes", "t", "true", "on", "1"))
FALSE_WORDS = frozenset(("n", "no", "f", "false", "off", "0"))


class InternalConsistencyError(RuntimeError):
    """Raised when a computed object fails one of its own postconditions, e.g. a cofactor
    that does not compose back to the polynomial it was split from. This always indicates
    a bug rather than bad input, and the CLI maps it to a distinct exit status."""
    pass


def chunker(seq, size):
    """Consecutive slices of `seq`, each of length `size` except possibly the last."""
    return [seq[pos:pos + size] for pos in range(0, len(seq), size)]

def echo_err(message):
    secho(message, fg='red', err=True)

def echo_warn(message):
    secho(message, fg='yellow', err=True)

def echo_info(message):
    secho(message, fg='green', err=True)

def strtobool(val):
    """Reads a yes/no setting; accepts bools and the usual spellings of true and false."""
    if isinstance(val, bool): return val
    word = val.strip().lower()
    if word in TRUE_WORDS: return True
    if word in FALSE_WORDS: return False
    raise ValueError(f"invalid truth value {val!r}")

def echo_checks(results, title="Checks"):
    """Prints one line per check result as a tree grouped by kind."""
    last_kind = None
    echo(f"\n{(title + ':').ljust(24)} Results:")
    echo("════════════════════════ ════════════════════════════════════════")
    for i, res in enumerate(results):
        next_kind = results[i + 1].kind if i + 1 < len(results) else None
        if res.kind == last_kind:
            sep = "  └─" if next_kind != res.kind else "  ├─"
            kind_formatted = (" " * 20)
        else:
            sep = "◁───" if next_kind != res.kind else "◁─┬─"
            kind_formatted = res.kind.ljust(20)
        status = "PASS" if res.passed else "FAIL"
        detail = f"  ({res.detail})" if res.detail else ""
        echo(f"    {kind_formatted} {sep} {status} {res.name}{detail}")
        last_kind = res.kind
    echo("")
