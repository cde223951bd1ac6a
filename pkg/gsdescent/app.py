import json

from click import echo
from tabulate import tabulate

from .checks import CheckResult, find_checks
from .complexity import BoundInputError, CurveInput, bound_report, prime_power_parts
from .config import Config
from .descent import odd_p_factorization, table_for
from .ff import MAX_QUADRATIC_BASE_ORDER, extend_quadratic, field_pair, make_field
from .tower import (MAX_COUNT_WORK, TowerError, check_maximality, completed_tower,
    count_places_first_stage, first_stage_genus, gs_tower, render_ladder)
from .utils import InternalConsistencyError, echo_checks, echo_info, echo_warn

class App(object):
    def __init__(self):
        self._config = None

    @property
    def config(self):
        # Lazily reads the .env files and environment when first needed
        if self._config is None:
            self._config = Config()
        return self._config

    # Allows this class to support the context manager protocol and be used
    # in `with` blocks, as the CLI does
    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, tb):
        pass


    def _format(self, fmt):
        return fmt or self.config.output_format

    def _emit(self, fmt, lines, payload):
        if self._format(fmt) == "json":
            echo(json.dumps(payload, indent=2))
        else:
            for line in lines:
                echo(line)

    def _table(self, p, n, modulus=None, norms=None):
        base, ambient = field_pair(p, n, modulus or "default")
        norm_elems = [base.power(k) for k in norms] if norms else None
        return table_for(ambient, norm_elems)

    ##################################################################
    # High-level tasks that may be exposed as CLI commands
    ##################################################################

    def field_info(self, p, n, modulus=None, table=False, fmt=None):
        base = make_field(p, n, modulus or "default")
        ambient = extend_quadratic(base) if base.order <= MAX_QUADRATIC_BASE_ORDER else None
        if n == 1:
            # w is a residue here, not the class of an indeterminate
            gen_line = f"generator: w = {base.generator.value} (mod {p})"
        else:
            gen_note = ("the class of w is primitive" if base.indeterminate_is_generator
                else f"w is a primitive element; the class of the indeterminate is "
                    f"{base.indeterminate.render('coords')}")
            gen_line = f"generator: w ({gen_note})"
        lines = [
            base.presentation(),
            f"order {base.order}, characteristic {p}, degree {base.total_degree}",
            gen_line,
        ]
        if ambient is not None:
            lines.append(ambient.presentation())
        else:
            echo_info(f"Info: no quadratic tower above {MAX_QUADRATIC_BASE_ORDER} elements")
        rows = [[k, x.render(), x.render("coords")] for k, x in enumerate(base.nonzero_powers())]
        if table:
            lines += ["", tabulate(rows, headers=["k", "w^k", "coordinates"], tablefmt="simple")]
        payload = {
            "p": p, "n": n, "order": base.order,
            "modulus": base.modulus_json(),
            "generator_is_indeterminate": base.indeterminate_is_generator,
            "generator_coords": list(base.generator.coords),
            "quadratic_modulus": ambient.modulus_json() if ambient is not None else None,
        }
        if table:
            payload["table"] = [{"log": k, "coords": list(x.coords)}
                for k, x in enumerate(base.nonzero_powers())]
        self._emit(fmt, lines, payload)


    def descend(self, p, n, modulus=None, norms=None, fmt=None):
        table = self._table(p, n, modulus, norms)
        lines = table.render()
        payload = table.to_json()
        if p != 2:
            factors = odd_p_factorization(table.chain.ambient)
            lines.append(f"T^{table.q} + T = " + " * ".join(f"({f})" for f in factors))
            payload["quadratic_constants"] = [f.coeffs[0].to_json() for f in factors[1:]]
        if table.n > 1:
            lines += ["", render_ladder(table)]
        self._emit(fmt, lines, payload)


    def tower(self, p, n, depth, modulus=None, norms=None, completed=True, fmt=None):
        table = self._table(p, n, modulus, norms)
        if completed:
            eqs = completed_tower(table, depth)
        else:
            eqs = gs_tower(table.base_field, depth)
        rows = [[f"({e.level[0]},{e.level[1]})", e.new_var, e.relation,
            "" if e.degree_over_prev is None else e.degree_over_prev, e.step or ""] for e in eqs]
        lines = [tabulate(rows, headers=["level", "var", "relation", "degree", "step"],
            tablefmt="simple")]
        self._emit(fmt, lines, [e.to_json() for e in eqs])


    def count(self, p, n, i=None, modulus=None, norms=None, fmt=None):
        table = self._table(p, n, modulus, norms)
        levels = [i] if i is not None else list(range(1, n + 1))
        workers, progress = self.config.workers, self.config.show_progress
        q = table.q
        stats = []
        for level in levels:
            if q ** 3 > MAX_COUNT_WORK:
                echo_warn(f"Warn: q = {q} is too large to count over F_{q * q}; "
                    f"counting over F_{q} only.")
                n1 = count_places_first_stage(table, level, "q", workers, progress)
                stats.append({"i": level, "genus": first_stage_genus(table.base_field, level),
                    "n1_over_Fq": n1})
                continue
            stats.append(check_maximality(table, level, workers, progress).to_json())

        rows = [[s["i"], s["genus"], s["n1_over_Fq"], s.get("n_over_Fq2", ""),
            q * q + 1 + 2 * s["genus"] * q, s.get("maximal", "")] for s in stats]
        lines = [f"first stage over F_{q}: M_(n-i)(t) = x^{q + 1}",
            tabulate(rows, headers=["i", "genus", f"N(F_{q})", f"N(F_{q * q})", "Weil bound",
                "maximal"], tablefmt="simple")]
        self._emit(fmt, lines, stats)


    def bound(self, q, n, g=None, n1=None, n2=None, stage=None, nonspecial=None, fmt=None):
        if stage is not None:
            if g is not None or n1 is not None:
                raise BoundInputError("--stage supplies g and N_1; do not pass --g or --n1 with it")
            if n2 is None:
                raise BoundInputError("--stage needs --n2: degree-2 place counts are caller data")
            g, n1 = self._stage_curve(q, stage)
            echo_info(f"Info: first stage G_1,{stage} over F_{q}: g = {g}, N_1 = {n1}")

        curve = None
        if g is not None or n1 is not None or n2 is not None:
            if g is None or n1 is None or n2 is None:
                raise BoundInputError("a curve needs all of --g, --n1 and --n2")
            curve = CurveInput(q, n, g, n1, n2, nonspecial)
        report = bound_report(q, n, curve)
        self._emit(fmt, report.render(), report.to_json())


    def _stage_curve(self, q, stage):
        p, n = prime_power_parts(q)
        table = self._table(p, n)
        if not 1 <= stage <= n:
            raise TowerError(f"stage index must satisfy 1 <= i <= {n}, got {stage}")
        n1 = count_places_first_stage(table, stage, "q", self.config.workers,
            self.config.show_progress)
        return first_stage_genus(table.base_field, stage), n1


    def list_checks(self, name_glob=None, kind=None, fmt=None):
        checks = find_checks(name_glob, kind)
        rows = [c.as_row() for c in checks]
        lines = [tabulate([[r["kind"], r["name"], r["desc"].splitlines()[0]] for r in rows],
            headers=["kind", "name", "description"], tablefmt="simple")]
        self._emit(fmt, lines, rows)


    def verify(self, name_glob=None, kind=None, seed=None, fmt=None):
        """Runs the selected checks; returns True iff every result passed."""
        checks = find_checks(name_glob, kind)
        if len(checks) == 0:
            raise ValueError("no checks match those parameters")

        results = []
        for check_cls in checks:
            check = check_cls(self.config, seed)
            try:
                results += check.run()
            except (ValueError, InternalConsistencyError, ZeroDivisionError) as e:
                results.append(CheckResult(check.kind.value, check.name, False,
                    f"{type(e).__name__}: {e}"))

        passed = all(r.passed for r in results)
        if self._format(fmt) == "json":
            echo(json.dumps({"passed": passed, "results": [r.to_json() for r in results]},
                indent=2))
        else:
            echo_checks(results, title="Checks")
            n_failed = sum(not r.passed for r in results)
            echo(f"{len(results) - n_failed} passed, {n_failed} failed")
        return passed
