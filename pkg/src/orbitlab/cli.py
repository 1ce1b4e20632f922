"""Command-line front end.

Rational inputs are "p/q" strings; angles are rational multiples of pi
written "3/4pi" (the "pi" suffix is optional).  X vectors are coweights
and may be floats.  Exit codes: 0 success, 2 validation error,
1 computation error.
"""

import json
import math
import sys
from fractions import Fraction

import click

from .errors import OrbitlabError
from .realform.catalog import builtin_catalog, builtin_names, frame_properties, get_group


class ComputationError(click.ClickException):
    exit_code = 1


def _fail(exc):
    raise ComputationError(f"{type(exc).__name__}: {exc}")


# parsing

def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {text!r}")


def parse_angle(text):
    t = text.strip()
    if t.endswith("pi"):
        t = t[:-2].strip() or "1"
        if t in ("-", "+"):
            t += "1"
    return parse_rational(t)


def parse_vector(text, item=parse_rational):
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise click.BadParameter("empty vector")
    return tuple(item(p) for p in parts)


def parse_float(text):
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise click.BadParameter(f"not a number: {text!r}")


def _group(name):
    try:
        return get_group(name)
    except KeyError:
        raise click.BadParameter(f"unknown group {name!r}; known: {', '.join(builtin_names())}",
                                 param_hint="--group")


def _frame(entry, name):
    if name is None:
        return entry.fundamental_frame
    try:
        return entry.frame(name)
    except KeyError as exc:
        raise click.BadParameter(str(exc), param_hint="--frame")


def _lambda(frame, text):
    vec = parse_vector(text)
    rd = frame.datum
    if len(vec) == rd.rank_ss:
        vec = vec + (Fraction(0),) * (rd.rank - rd.rank_ss)
    if len(vec) != rd.rank:
        raise click.BadParameter(f"expected {rd.rank} coordinates", param_hint="--lambda")
    return vec


def _chamber(frame, ell, text):
    from .params import enumerate_chambers
    try:
        chambers = enumerate_chambers(frame, ell)
    except OrbitlabError as exc:
        raise click.BadParameter(str(exc), param_hint="--lambda")
    if text is None:
        return chambers[0][0]
    signs = text.strip()
    if signs in (".", ""):
        signs = ""
    for pt, _ in chambers:
        if _signs(pt) == signs:
            return pt
    known = ", ".join(_signs(pt) or "." for pt, _ in chambers)
    raise click.BadParameter(f"no chamber {text!r}; available: {known}", param_hint="--chamber")


def _signs(pt):
    return "".join("+" if s > 0 else "-" for s in pt.Fplus)


def _matrix(text):
    rows = [r for r in text.split("|") if r.strip()]
    return tuple(parse_vector(r) for r in rows)


def _elliptic(frame, text):
    """"id" or "x=<angles>;w=<automorphism name or matrix rows a,b|c,d>"."""
    from .characters import elliptic_point
    entry = frame.entry
    t = text.strip()
    if t == "id":
        return elliptic_point(frame, name="id")
    x, w = None, None
    for part in t.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise click.BadParameter(f"bad elliptic spec {text!r}", param_hint="--elliptic")
        k, v = (s.strip() for s in part.split("=", 1))
        if k == "x":
            x = parse_vector(v, parse_angle)
        elif k == "w":
            names = {a.name: a for a in entry.automorphisms} if entry else {}
            if v in names:
                dst, m = names[v].maps.get(frame.name, (None, None))
                if dst != frame.name:
                    raise click.BadParameter(f"{v} does not preserve frame {frame.name}",
                                             param_hint="--elliptic")
                w = m
            elif any(ch.isdigit() for ch in v):
                w = _matrix(v)
            else:
                known = ", ".join(sorted(names)) or "none"
                raise click.BadParameter(f"unknown automorphism {v!r}; available: {known}",
                                         param_hint="--elliptic")
        else:
            raise click.BadParameter(f"unknown key {k!r}", param_hint="--elliptic")
    try:
        return elliptic_point(frame, x, w, name=t)
    except OrbitlabError as exc:
        raise click.BadParameter(str(exc), param_hint="--elliptic")


def _X(frame, text):
    vec = parse_vector(text, parse_float)
    if len(vec) != frame.datum.rank:
        raise click.BadParameter(f"expected {frame.datum.rank} coordinates", param_hint="--X")
    return vec


def _s(v):
    return str(v)


def _emit(data, as_json):
    if as_json:
        click.echo(json.dumps(data, indent=2, sort_keys=True))
        return
    for k, v in data.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            click.echo(f"{k}:")
            cols = list(v[0].keys())
            click.echo("  " + "\t".join(cols))
            for row in v:
                click.echo("  " + "\t".join(str(row[c]) for c in cols))
        else:
            click.echo(f"{k}: {v}")


def _num(z, digits=15):
    # + 0.0 folds -0.0 into 0.0 so output is stable
    return round(float(z), digits) + 0.0


# commands

@click.group()
def main():
    """Orbit-method parameters, metaplectic checks and character values."""


@main.group()
def catalog():
    """Inspect the built-in group catalog."""


@catalog.command("list")
@click.option("--json", "as_json", is_flag=True)
def catalog_list(as_json):
    cat = builtin_catalog()
    rows = [{"name": n, "rank": cat[n].datum.rank, "connected": cat[n].connected,
             "frames": ",".join(f.name for f in cat[n].frames)} for n in builtin_names()]
    _emit({"groups": rows}, as_json)


@catalog.command("show")
@click.argument("name")
@click.option("--json", "as_json", is_flag=True)
def catalog_show(name, as_json):
    entry = _group(name)
    rd = entry.datum
    frames = []
    for f in entry.frames:
        props = frame_properties(f, entry)
        frames.append({
            "frame": f.name,
            "labels": "".join(f.labels[:rd.npos]),
            "dim_t": f.dim_t,
            "dim_a": f.dim_a,
            "fundamental": props["fundamental"],
            "split": props["split"],
        })
    data = {
        "group": entry.name,
        "rank": rd.rank,
        "center_rank": rd.rank_center,
        "connected": entry.connected,
        "positive_roots": [",".join(map(_s, rd.roots[i])) for i in range(rd.npos)],
        "automorphisms": [a.name for a in entry.automorphisms],
        "frames": frames,
    }
    _emit(data, as_json)


@main.group()
def params():
    """Parameters lambda~ and their descent."""


@params.command("enumerate")
@click.option("--group", required=True)
@click.option("--frame", "frame_name", default=None)
@click.option("--lambda", "lam", required=True)
@click.option("--json", "as_json", is_flag=True)
def params_enumerate(group, frame_name, lam, as_json):
    from .params import classify_param, enumerate_chambers
    entry = _group(group)
    frame = _frame(entry, frame_name)
    ell = _lambda(frame, lam)
    try:
        rows = []
        for pt, regular in enumerate_chambers(frame, ell):
            flags = classify_param(pt)
            rows.append({"chamber": _signs(pt) or ".", **{k: flags[k] for k in sorted(flags)}})
    except OrbitlabError as exc:
        _fail(exc)
    _emit({"group": entry.name, "frame": frame.name, "lambda": [_s(v) for v in ell],
           "params": rows}, as_json)


@params.command("descend")
@click.option("--group", required=True)
@click.option("--frame", "frame_name", default=None)
@click.option("--lambda", "lam", required=True)
@click.option("--chamber", default=None)
@click.option("--elliptic", "ell_spec", default="id")
@click.option("--json", "as_json", is_flag=True)
def params_descend(group, frame_name, lam, chamber, ell_spec, as_json):
    from .params import count_descent_fiber, descend_at_e, descent_fiber_formula
    entry = _group(group)
    frame = _frame(entry, frame_name)
    pt = _chamber(frame, _lambda(frame, lam), chamber)
    e = _elliptic(frame, ell_spec)
    try:
        d = descend_at_e(pt, e)
        data = {
            "group": entry.name,
            "lambda": [_s(v) for v in pt.lam.ell],
            "chamber": _signs(pt) or ".",
            "roots_of_g_e": [",".join(map(_s, r)) + ":" + lab
                             for r, lab in zip(d.roots, d.labels)],
            "flags": d.flags(),
        }
        if data["flags"]["in_I"]:
            data["fiber_count"] = count_descent_fiber(pt, e)
            data["fiber_formula"] = _s(descent_fiber_formula(pt, e))
    except OrbitlabError as exc:
        _fail(exc)
    _emit(data, as_json)


@main.group("orbit-ft")
def orbit_ft():
    """Fourier transforms of regular coadjoint orbits."""


@orbit_ft.command("eval")
@click.option("--group", required=True)
@click.option("--frame", "frame_name", default=None)
@click.option("--lambda", "lam", required=True)
@click.option("--X", "X", required=True)
@click.option("--scale", default=1.0, type=float)
@click.option("--json", "as_json", is_flag=True)
def orbit_ft_eval(group, frame_name, lam, X, scale, as_json):
    from .orbits.transform import orbit_fourier_transform
    entry = _group(group)
    frame = _frame(entry, frame_name)
    ell = _lambda(frame, lam)
    xv = _X(frame, X)
    try:
        v = orbit_fourier_transform(frame, ell, xv, scale=scale)
    except OrbitlabError as exc:
        _fail(exc)
    _emit({"group": entry.name, "lambda": [_s(c) for c in ell], "X": list(xv),
           "scale": scale, "value_re": _num(v.real), "value_im": _num(v.imag)}, as_json)


def _keys_for(entry):
    from .orbits.calibration import KEYS
    labels = {lab for f in entry.frames for lab in f.labels}
    return tuple(k for k in KEYS if k[3] in labels and k[5] in labels)


@orbit_ft.command("calibrate")
@click.option("--group", default=None, help="restrict to the factor types of one group")
@click.option("--samples", default=6, type=click.IntRange(2, 200))
@click.option("--seed", default=0, type=int)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def orbit_ft_calibrate(group, samples, seed, out):
    from .orbits.calibration import KEYS, calibrate, format_store
    keys = _keys_for(_group(group)) if group else KEYS
    if not keys:
        raise click.BadParameter(f"{group} has no calibrated factor types", param_hint="--group")
    store = calibrate(keys, samples, seed)
    with open(out, "w") as fh:
        fh.write(format_store(store))
    click.echo(f"wrote {len(store.tables)} tables for {', '.join(keys)} to {out}")


@main.group()
def metaplectic():
    """Exact identities on the metaplectic cover."""


@metaplectic.command("check")
@click.option("--seed", default=0, type=int)
@click.option("--cases", default=200, type=click.IntRange(1, 100000))
def metaplectic_check(seed, cases):
    from .metaplectic.corpus import run_corpus
    passed, failed, failures = run_corpus(seed, cases)
    click.echo(f"metaplectic identities: {passed} passed, {failed} failed")
    for case, kinds, res in failures[:10]:
        click.echo(f"  case {case} {kinds}: {res}")
    if failed:
        sys.exit(1)


@main.group()
def character():
    """Character values from the orbit-sum formula."""


def _tau(pt, name):
    from .characters import candidate_taus, chi_canonical
    if name == "canonical":
        return chi_canonical(pt)
    if name.startswith("candidate"):
        try:
            k = int(name[len("candidate"):] or 0)
        except ValueError:
            raise click.BadParameter(f"bad tau {name!r}", param_hint="--tau")
        taus = candidate_taus(pt)
        if not 0 <= k < len(taus):
            raise click.BadParameter(f"only {len(taus)} candidates", param_hint="--tau")
        return taus[k]
    raise click.BadParameter("expected canonical or candidateN", param_hint="--tau")


@character.command("eval")
@click.option("--group", required=True)
@click.option("--frame", "frame_name", default=None)
@click.option("--lambda", "lam", required=True)
@click.option("--chamber", default=None)
@click.option("--tau", "tau_name", default="canonical")
@click.option("--elliptic", "ell_spec", default="id")
@click.option("--X", "X", required=True)
@click.option("--form", type=click.Choice(["F", "F+"]), default="F")
@click.option("--json", "as_json", is_flag=True)
def character_eval(group, frame_name, lam, chamber, tau_name, ell_spec, X, form, as_json):
    from .characters import eval_character
    entry = _group(group)
    frame = _frame(entry, frame_name)
    pt = _chamber(frame, _lambda(frame, lam), chamber)
    e = _elliptic(frame, ell_spec)
    xv = _X(frame, X)
    try:
        tau = _tau(pt, tau_name)
        ev = eval_character(pt, tau, e, xv, form=form)
    except OrbitlabError as exc:
        _fail(exc)
    rows = []
    for c in ev.contributions:
        s = c.summand()
        rows.append({
            "lambda": ",".join(map(_s, c.param.lam.ell)),
            "chamber": _signs(c.param) or ".",
            "class": c.orbit,
            "sign": c.sign,
            "ipow": c.ipow,
            "trace": str(c.trace),
            "summand_re": _num(s.real),
            "summand_im": _num(s.imag),
        })
    _emit({"group": entry.name, "lambda": [_s(v) for v in pt.lam.ell],
           "chamber": _signs(pt) or ".", "tau": tau_name, "elliptic": ell_spec,
           "form": form, "value_re": _num(ev.value.real), "value_im": _num(ev.value.imag),
           "k_e": _num(ev.factors["k_e"]),
           "contributions": rows}, as_json)


@character.command("identify")
@click.option("--group", required=True)
@click.option("--samples", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--bound", default=8, type=click.IntRange(1, 40))
@click.option("--tol", default=1e-6, type=float)
@click.option("--json", "as_json", is_flag=True)
def character_identify(group, path, bound, tol, as_json):
    """Samples file: JSON list of {"elliptic", "X", "value_re", "value_im"}."""
    from .characters import identify_orbit
    entry = _group(group)
    frame = entry.fundamental_frame
    try:
        with open(path) as fh:
            raw = json.load(fh)
        samples = [(_elliptic(frame, s.get("elliptic", "id")), _X(frame, str(s["X"]).strip("[]")),
                    complex(s["value_re"], s.get("value_im", 0.0))) for s in raw]
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise click.BadParameter(f"bad samples file: {exc}", param_hint="--samples")
    try:
        res = identify_orbit(samples, entry, bound, tol)
    except OrbitlabError as exc:
        _fail(exc)
    _emit({"group": entry.name, "lambda": [_s(v) for v in res.param.lam.ell],
           "chamber": _signs(res.param) or ".", "candidates": res.candidates}, as_json)


@main.command()
@click.option("--suite", type=click.Choice(["metaplectic", "su2", "all"]), default="all")
@click.option("--seed", default=0, type=int)
def selftest(suite, seed):
    """Run the built-in identity checks."""
    ok = True
    if suite in ("metaplectic", "all"):
        from .metaplectic.corpus import run_corpus
        passed, failed, _ = run_corpus(seed, 200)
        click.echo(f"metaplectic: {passed} passed, {failed} failed")
        ok &= failed == 0
    if suite in ("su2", "all"):
        passed, failed = _su2_suite()
        click.echo(f"su2 traces: {passed} passed, {failed} failed")
        ok &= failed == 0
    if not ok:
        sys.exit(1)


def _su2_suite():
    import cmath
    from .characters import chi_canonical, elliptic_point, eval_character
    from .params import enumerate_chambers
    frame = get_group("su2").fundamental_frame
    passed = failed = 0
    for n in range(1, 9):
        pt = enumerate_chambers(frame, (Fraction(n),))[0][0]
        tau = chi_canonical(pt)
        for th in (0.3, 1.1, 2.5):
            v = eval_character(pt, tau, elliptic_point(frame), (th / (2 * math.pi),)).value
            ref = sum(cmath.exp(1j * (n - 1 - 2 * k) * th / 2) for k in range(n))
            if abs(v - ref) < 1e-8:
                passed += 1
            else:
                failed += 1
    return passed, failed


def run(argv=None):
    """Run the CLI on argv and return the exit code."""
    try:
        main.main(args=argv, prog_name="orbitlab", standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except SystemExit as exc:
        return exc.code or 0
    return 0


if __name__ == "__main__":
    sys.exit(run())
