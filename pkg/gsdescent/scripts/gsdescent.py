import click
import collections
from ..app import App
from ..utils import InternalConsistencyError, echo_err

# Exit statuses beyond click's own (0 success, 2 usage error)
EXIT_CHECKS_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3

class OrderedGroup(click.Group):
    def __init__(self, name=None, commands=None, **attrs):
        super(OrderedGroup, self).__init__(name, commands, **attrs)
        self.commands = commands or collections.OrderedDict()

    def list_commands(self, ctx):
        return self.commands

    def invoke(self, ctx):
        try:
            return super(OrderedGroup, self).invoke(ctx)
        except InternalConsistencyError as e:
            echo_err(f"Error: internal consistency check failed: {e}")
            ctx.exit(EXIT_INTERNAL)
        except (ValueError, ZeroDivisionError) as e:
            echo_err(f"Error: {e}")
            ctx.exit(EXIT_BAD_INPUT)


def _int_list(ctx, param, value):
    """Parses "c0,c1,...,1" into a list of ints."""
    if value is None: return None
    try:
        return [int(part) for part in value.split(",") if part.strip() != ""]
    except ValueError:
        raise click.BadParameter("expected comma-separated integers, e.g. \"1,1,1\"")

_p_option = click.option('-p', '--p', 'p', required=True, type=click.IntRange(min=2),
    help="Characteristic p.")
_n_option = click.option('-n', '--n', 'n', required=True, type=click.IntRange(min=1),
    help="Degree n of F_q over F_p, where q = p^n.")
_modulus_option = click.option('--modulus', default=None, callback=_int_list,
    help="Modulus of F_q over F_p as coefficients \"c0,c1,...,1\", lowest degree first.")
_norms_option = click.option('--norms', default=None, callback=_int_list,
    help=("Odd p only: chain override as generator-power exponents \"a1,a2,...\" of the "
        "norms in F_q."))
_format_option = click.option('--format', 'fmt', default=None,
    type=click.Choice(["text", "json"]),
    help="Output format; defaults to GSDESCENT_FORMAT.")


@click.group(cls=OrderedGroup)
@click.pass_context
def main(ctx):
    """gsdescent: descent of Artin-Schreier extensions and of the completed
    Garcia-Stichtenoth tower from F_{q^2} to F_q

    This is the main menu. Please use one of the subcommands listed below."""
    ctx.obj = ctx.with_resource(App())

@main.command()
@_p_option
@_n_option
@_modulus_option
@click.option('--table', default=False, is_flag=True,
    help="Also prints the full discrete-log table of F_q.")
@_format_option
@click.pass_obj
def field(app, p, n, modulus, table, fmt):
    """(1) Describes F_q and the quadratic tower F_{q^2} over it."""
    app.field_info(p, n, modulus, table, fmt)

@main.command()
@_p_option
@_n_option
@_modulus_option
@_norms_option
@_format_option
@click.pass_obj
def descend(app, p, n, modulus, norms, fmt):
    """(2) Prints the descent table P_i, M_i and the one-step ladder."""
    app.descend(p, n, modulus, norms, fmt)

@main.command()
@_p_option
@_n_option
@click.option('-d', '--depth', default=2, show_default=True, type=click.IntRange(min=1),
    help="Number of tower levels to generate.")
@click.option('--completed/--gs-only', default=True,
    help="Inserts the intermediate degree-p steps, or prints the plain tower over F_{q^2}.")
@_modulus_option
@_norms_option
@_format_option
@click.pass_obj
def tower(app, p, n, depth, completed, modulus, norms, fmt):
    """(3) Prints the defining equations of the tower up to a depth."""
    app.tower(p, n, depth, modulus, norms, completed, fmt)

@main.command()
@_p_option
@_n_option
@click.option('-i', '--i', 'i', default=None, type=int,
    help="Only this first-stage level; all levels 1..n by default.")
@_modulus_option
@_norms_option
@_format_option
@click.pass_obj
def count(app, p, n, i, modulus, norms, fmt):
    """(4) Counts rational places of the first-stage curves and checks maximality.

    Worker processes are set by GSDESCENT_WORKERS."""
    app.count(p, n, i, modulus, norms, fmt)

@main.command()
@click.option('-q', '--q', 'q', required=True, type=int, help="Size q of the base field.")
@click.option('-n', '--n', 'n', required=True, type=int, help="Extension degree n.")
@click.option('--g', default=None, type=int, help="Genus of the curve.")
@click.option('--n1', default=None, type=int, help="Number of degree-1 places.")
@click.option('--n2', default=None, type=int, help="Number of degree-2 places.")
@click.option('--stage', default=None, type=int,
    help="Takes g and N_1 from the first-stage curve G_1,i of the tower over F_q.")
@click.option('--nonspecial/--no-nonspecial', default=None,
    help="Whether a non-special divisor of degree g-1 exists; assumed when q >= 4.")
@_format_option
@click.pass_obj
def bound(app, q, n, g, n1, n2, stage, nonspecial, fmt):
    """(5) Evaluates bilinear-complexity bounds for multiplication in F_{q^n}."""
    app.bound(q, n, g, n1, n2, stage, nonspecial, fmt)

@main.command(name="list-checks")
@click.option('-s', '--name', 'name_glob', default=None, type=str,
    help="Filter to checks matching this name. Shell-style globs are allowed.")
@click.option('-k', '--kind', default=None, type=click.Choice(["golden", "property"]),
    help="Filter to one kind of check.")
@_format_option
@click.pass_obj
def list_checks(app, name_glob, kind, fmt):
    """List the checks that `verify` can run."""
    app.list_checks(name_glob, kind, fmt)

@main.command()
@click.option('-s', '--name', 'name_glob', default=None, type=str,
    help="Filter to checks matching this name. Shell-style globs are allowed.")
@click.option('-k', '--kind', default=None, type=click.Choice(["golden", "property"]),
    help="Filter to one kind of check.")
@click.option('--seed', default=None, type=int,
    help="Seed for randomized property checks; defaults to GSDESCENT_SEED.")
@_format_option
@click.pass_context
def verify(ctx, name_glob, kind, seed, fmt):
    """(6) Runs the golden fixtures and property checks; exits 1 if any fail."""
    if not ctx.obj.verify(name_glob, kind, seed, fmt):
        ctx.exit(EXIT_CHECKS_FAILED)


if __name__ == '__main__':
    main()
