"""Cartan frames, Cayley transforms and the group catalog.

A frame records the conjugation ``sigma`` of a Cartan subalgebra as a linear
involution ``S`` of the weight space.  It acts on the Cartan subalgebra by the
transpose, and

    t = {x : S^T x = -x},    a = {x : S^T x = x}.

Root labels: ``R`` real, ``C`` compact imaginary, ``N`` noncompact imaginary,
``X`` complex.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .. import linalg as la
from ..errors import InconsistentFrame, NotARoot, ParseError, WrongLabel
from ..rootdata import build_root_datum, parse_factors

LABELS = ("R", "C", "N", "X")
FIELDS = {
    "group": {"name", "factors", "center_rank", "connected"},
    "frame": {"name", "sigma", "labels", "kernel_lattice"},
    "automorphism": {"name", "automorphisms"},
}


@dataclass(eq=False)
class CartanFrame:
    datum: object
    name: str
    sigma: tuple
    labels: tuple
    kernel_lattice: tuple
    group: str = ""
    cayley_neighbors: list = field(default_factory=list)
    entry: object = field(default=None, repr=False)

    def __post_init__(self):
        rd = self.datum
        self.sigma_perm = rd.perm_of_matrix(self.sigma)
        if self.sigma_perm is None:
            raise InconsistentFrame(self.name, "sigma does not permute the roots")
        if la.mat_mul(self.sigma, self.sigma) != la.identity(rd.rank):
            raise InconsistentFrame(self.name, "sigma is not an involution")
        st = la.transpose(self.sigma)
        r = rd.rank
        minus = [[st[i][j] + int(i == j) for j in range(r)] for i in range(r)]
        plus = [[st[i][j] - int(i == j) for j in range(r)] for i in range(r)]
        self.t_basis = la.nullspace(minus, r)
        self.a_basis = la.nullspace(plus, r)
        self.dim_t = len(self.t_basis)
        self.dim_a = len(self.a_basis)
        self._check()

    def _check(self):
        rd = self.datum
        for i, lab in enumerate(self.labels):
            j = self.sigma_perm[i]
            if lab == "R" and j != i:
                raise InconsistentFrame(self.name, f"root {i} labelled real")
            if lab in "CN" and j != rd.neg(i):
                raise InconsistentFrame(self.name, f"root {i} labelled imaginary")
            if lab == "X" and j in (i, rd.neg(i)):
                raise InconsistentFrame(self.name, f"root {i} labelled complex")
        imag = [i for i in range(len(rd.roots)) if self.labels[i] in "CN"]
        for i in imag:
            for j in imag:
                k = rd.index.get(la.add(rd.roots[i], rd.roots[j]))
                if k is None:
                    continue
                parity = (self.labels[i] == "N") ^ (self.labels[j] == "N")
                if (self.labels[k] == "N") != parity:
                    raise InconsistentFrame(self.name, "compact/noncompact grading not additive")
        for z in self.kernel_lattice:
            if la.mat_vec(la.transpose(self.sigma), z) != la.scale(-1, z):
                raise InconsistentFrame(self.name, "kernel lattice vector not in t")
        if la.rank(list(self.kernel_lattice)) != len(self.kernel_lattice) or (
            len(self.kernel_lattice) != self.dim_t
        ):
            raise InconsistentFrame(self.name, "kernel lattice must be a basis of t")

    # projections

    def weight_t(self, w):
        return la.scale(Fraction(1, 2), la.sub(w, la.mat_vec(self.sigma, w)))

    def weight_a(self, w):
        return la.scale(Fraction(1, 2), la.add(w, la.mat_vec(self.sigma, w)))

    def coweight_t(self, x):
        return la.scale(Fraction(1, 2), la.sub(x, la.mat_vec(la.transpose(self.sigma), x)))

    def coweight_a(self, x):
        return la.scale(Fraction(1, 2), la.add(x, la.mat_vec(la.transpose(self.sigma), x)))

    # root classes

    def roots_with(self, labels, positive_only=False):
        n = self.datum.npos if positive_only else len(self.datum.roots)
        return [i for i in range(n) if self.labels[i] in labels]

    def label(self, i):
        return self.labels[i]

    def __repr__(self):
        return f"CartanFrame({self.group}:{self.name})"


@dataclass(eq=False)
class Automorphism:
    """A component-group element: per source frame, (target frame name, weight matrix)."""

    name: str
    maps: dict

    def on(self, frame_name):
        return self.maps[frame_name]


@dataclass(eq=False)
class GroupCatalogEntry:
    name: str
    datum: object
    frames: list
    automorphisms: list
    connected: bool
    center_elements: list = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False)

    def frame(self, name):
        for f in self.frames:
            if f.name == name:
                return f
        raise KeyError(f"{self.name} has no frame {name!r}")

    @property
    def fundamental_frame(self):
        return next(f for f in self.frames if frame_properties(f)["fundamental"])

    @property
    def split_frame(self):
        return next(f for f in self.frames if frame_properties(f)["split"])


# parsing


def _parse_sign_perm(text, rd, where):
    """'-1 +3 +2 | + -' -> weight matrix of the linear map."""
    text = text.strip()
    if "|" in text:
        roots_part, center_part = text.split("|", 1)
    else:
        roots_part, center_part = text, ""
    toks = roots_part.split()
    if len(toks) != rd.npos:
        raise ParseError(where, f"expected {rd.npos} root images, got {len(toks)}")
    images = []
    for t in toks:
        try:
            v = int(t)
        except ValueError:
            raise ParseError(where, f"bad root image {t!r}") from None
        if v == 0 or abs(v) > rd.npos:
            raise ParseError(where, f"root image out of range {t!r}")
        idx = abs(v) - 1
        images.append(rd.roots[idx] if v > 0 else rd.roots[rd.neg(idx)])
    csigns = center_part.split()
    if len(csigns) != rd.rank_center:
        raise ParseError(where, "center signs do not match center rank")
    n = rd.rank_ss
    r = rd.rank
    m = [[Fraction(0)] * r for _ in range(r)]
    if n:
        # images of simple roots give the map on the root span
        src = [rd.simple_roots[i][:n] for i in range(n)]
        dst = [images[rd.simple_index[i]][:n] for i in range(n)]
        # M src_i = dst_i  =>  M = D S^{-1} with columns
        s_cols = la.transpose(src)
        d_cols = la.transpose(dst)
        ms = la.mat_mul(d_cols, la.inverse(s_cols))
        for i in range(n):
            for j in range(n):
                m[i][j] = ms[i][j]
    for k, s in enumerate(csigns):
        if s not in ("+", "-"):
            raise ParseError(where, f"bad center sign {s!r}")
        m[n + k][n + k] = Fraction(1 if s == "+" else -1)
    m = tuple(tuple(row) for row in m)
    for i in range(rd.npos):
        if la.mat_vec(m, rd.roots[i]) != images[i]:
            raise ParseError(where, "root images are not induced by a linear map")
    return m


def _parse_lattice(text, where):
    text = text.strip()
    if not text:
        return ()
    rows = []
    for part in text.split(";"):
        try:
            rows.append(tuple(Fraction(x) for x in part.split()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(where, f"bad lattice row {part!r}") from None
    return tuple(rows)


def _parse_sections(text):
    sections = []
    version = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            kind = line[1:-1].strip()
            if kind not in FIELDS:
                raise ParseError(f"line {lineno}", f"unknown section {kind!r}")
            sections.append((kind, {}, lineno))
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}", "expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if not sections:
            if key != "version":
                raise ParseError(f"line {lineno}", f"field {key!r} outside a section")
            version = value
            continue
        kind, fields, _ = sections[-1]
        if key not in FIELDS[kind]:
            raise ParseError(f"line {lineno}", f"unknown field {key!r} in [{kind}]")
        if key in fields:
            raise ParseError(f"line {lineno}", f"duplicate field {key!r}")
        fields[key] = (value, lineno)
    return version, sections


def load_catalog(source):
    """Parse a catalog document into a list of GroupCatalogEntry."""
    version, sections = _parse_sections(source)
    if not sections:
        raise ParseError("line 1", "empty catalog document")
    if version != "1":
        raise ParseError("line 1", f"unsupported catalog version {version!r}")
    groups = []
    current = None
    pending_frames = []
    pending_autos = []

    def finish():
        if current is None:
            return
        entry = _build_entry(current, pending_frames, pending_autos)
        groups.append(entry)

    for kind, fields, lineno in sections:
        where = f"line {lineno}"
        if kind == "group":
            finish()
            for key in ("name", "factors", "connected"):
                if key not in fields:
                    raise ParseError(where, f"[group] missing {key!r}")
            try:
                rd = build_root_datum(
                    parse_factors(fields["factors"][0]),
                    int(fields.get("center_rank", ("0", 0))[0]),
                )
            except Exception as exc:
                raise ParseError(where, f"bad group data: {exc}") from None
            conn = fields["connected"][0].lower()
            if conn not in ("true", "false"):
                raise ParseError(where, "connected must be true or false")
            current = {"name": fields["name"][0], "datum": rd, "connected": conn == "true"}
            pending_frames = []
            pending_autos = []
        elif current is None:
            raise ParseError(where, f"[{kind}] before any [group]")
        elif kind == "frame":
            for key in ("name", "sigma", "labels"):
                if key not in fields:
                    raise ParseError(where, f"[frame] missing {key!r}")
            rd = current["datum"]
            sigma = _parse_sign_perm(fields["sigma"][0], rd, f"line {fields['sigma'][1]}")
            labs = fields["labels"][0].split()
            if len(labs) != rd.npos or any(x not in LABELS for x in labs):
                raise ParseError(f"line {fields['labels'][1]}", "bad labels")
            labels = tuple(labs) + tuple(labs)
            lattice = _parse_lattice(fields.get("kernel_lattice", ("", lineno))[0], where)
            for z in lattice:
                if len(z) != rd.rank:
                    raise ParseError(where, "lattice row has wrong length")
            pending_frames.append(
                CartanFrame(rd, fields["name"][0], sigma, labels, lattice, current["name"])
            )
        else:
            if "name" not in fields or "automorphisms" not in fields:
                raise ParseError(where, "[automorphism] needs name and automorphisms")
            maps = {}
            for part in fields["automorphisms"][0].split(";"):
                if ":" not in part:
                    raise ParseError(where, f"bad automorphism entry {part!r}")
                head, body = part.split(":", 1)
                if ">" in head:
                    src, dst = (s.strip() for s in head.split(">", 1))
                else:
                    src = dst = head.strip()
                maps[src] = (dst, _parse_sign_perm(body, current["datum"], where))
            pending_autos.append(Automorphism(fields["name"][0], maps))
    finish()
    return groups


def _build_entry(info, frames, autos):
    name = info["name"]
    if not frames:
        raise InconsistentFrame(name, "group without frames")
    entry = GroupCatalogEntry(name, info["datum"], list(frames), list(autos), info["connected"])
    for f in frames:
        f.entry = entry
    names = {f.name for f in frames}
    for a in autos:
        if set(a.maps) != names:
            raise InconsistentFrame(name, f"automorphism {a.name} must act on every frame")
        for src, (dst, m) in a.maps.items():
            if dst not in names:
                raise InconsistentFrame(name, f"automorphism {a.name} targets unknown frame")
            fs, fd = entry.frame(src), entry.frame(dst)
            if entry.datum.perm_of_matrix(m) is None:
                raise InconsistentFrame(name, f"automorphism {a.name} does not permute roots")
            if la.mat_mul(m, fs.sigma) != la.mat_mul(fd.sigma, m):
                raise InconsistentFrame(name, f"automorphism {a.name} does not intertwine sigma")
            perm = entry.datum.perm_of_matrix(m)
            if any(fs.labels[i] != fd.labels[perm[i]] for i in range(len(perm))):
                raise InconsistentFrame(name, f"automorphism {a.name} changes labels")
    fund = [f for f in frames if frame_properties_raw(f)["fundamental"]]
    if len(fund) != 1:
        raise InconsistentFrame(name, "exactly one fundamental frame required")
    mind = min(f.dim_t for f in frames)
    if len([f for f in frames if f.dim_t == mind]) != 1:
        raise InconsistentFrame(name, "exactly one split frame required")
    for f in frames:
        for i in f.roots_with("N", positive_only=True):
            target = cayley_transform(f, i, entry)
            f.cayley_neighbors.append((i, target.name))
    entry.center_elements = _center_elements(entry.fundamental_frame)
    return entry


def _center_elements(frame):
    """Points of T0 acting trivially on g, as angle vectors x (exp(2 pi i x)), mod the lattice."""
    rd = frame.datum
    lat = list(frame.kernel_lattice)
    if not lat:
        return [(frame.name, tuple(Fraction(0) for _ in range(rd.rank)))]
    found = []
    k = len(lat)
    steps = [Fraction(a, d) for d in (1, 2, 3, 4, 6) for a in range(d)]
    steps = sorted(set(steps))

    def rec(prefix):
        if len(prefix) == k:
            x = tuple(sum((c * z[j] for c, z in zip(prefix, lat)), Fraction(0))
                      for j in range(rd.rank))
            if all(la.dot(r, x).denominator == 1 for r in rd.roots):
                found.append((frame.name, x))
            return
        for s in steps:
            rec(prefix + [s])

    rec([])
    return found


def frame_properties_raw(frame):
    labs = frame.labels
    return {
        "fundamental": "R" not in labs,
        "no_imaginary": not any(x in "CN" for x in labs),
    }


def frame_properties(frame, entry=None):
    """{fundamental, split, no_imaginary} for a frame."""
    props = frame_properties_raw(frame)
    if entry is None:
        entry = getattr(frame, "entry", None)
    if entry is not None:
        props["split"] = frame.dim_t == min(f.dim_t for f in entry.frames)
    else:
        props["split"] = frame.dim_t == 0
    return props


def classify_root(frame, alpha):
    """Label of a root given as a weight vector or an index."""
    rd = frame.datum
    if isinstance(alpha, int):
        if not 0 <= alpha < len(rd.roots):
            raise NotARoot(alpha)
        return frame.labels[alpha]
    return frame.labels[rd.root_index(alpha)]


def _regrade_after_reflection(frame, i, new_sigma):
    """Labels for sigma' = sigma s_i, with grading flips for roots orthogonal to root i."""
    rd = frame.datum
    perm = rd.perm_of_matrix(new_sigma)
    alpha = rd.roots[i]
    labels = []
    for j, beta in enumerate(rd.roots):
        if perm[j] == j:
            labels.append("R")
        elif perm[j] == rd.neg(j):
            if frame.labels[j] in "CN":
                flip = (la.add(beta, alpha) in rd.index) or (la.sub(beta, alpha) in rd.index)
                if j in (i, rd.neg(i)):
                    labels.append(None)
                else:
                    old = frame.labels[j]
                    labels.append({"C": "N", "N": "C"}[old] if flip else old)
            else:
                labels.append(None)
        else:
            labels.append("X")
    return tuple(labels)


def match_frame(datum, sigma, labels, candidates):
    """Find (frame, w) with w sigma w^-1 = frame.sigma and labels transported by w.

    ``labels`` entries may be None (unknown grading).
    """
    for f in candidates:
        if f.dim_t != _dim_minus(datum, sigma):
            continue
        for w in datum.weyl_group():
            wm = w.matrix
            if la.mat_mul(wm, sigma) != la.mat_mul(f.sigma, wm):
                continue
            ok = all(
                labels[j] is None or labels[j] == f.labels[w.root_perm[j]]
                for j in range(len(labels))
            )
            if ok:
                return f, w
    return None, None


def _dim_minus(datum, sigma):
    st = la.transpose(sigma)
    r = datum.rank
    minus = [[st[i][j] + int(i == j) for j in range(r)] for i in range(r)]
    return len(la.nullspace(minus, r))


def _transported(entry_frame, w, sigma, labels, datum):
    """The catalog frame's data pulled back along w (so root indices match sigma)."""
    inv = la.inverse(w.matrix)
    lat = tuple(
        la.mat_vec(datum.coweight_matrix(inv), z) for z in entry_frame.kernel_lattice
    )
    full = tuple(entry_frame.labels[w.root_perm[j]] for j in range(len(labels)))
    fr = CartanFrame(datum, entry_frame.name, sigma, full, lat, entry_frame.group)
    fr.conjugator = w
    fr.matched = entry_frame
    fr.entry = getattr(entry_frame, "entry", None)
    return fr


def cayley_transform(frame, alpha, entry=None):
    """Cayley transform through a noncompact imaginary root (index or vector).

    Returns a frame whose root indexing agrees with ``frame``; ``.matched`` is
    the catalog frame and ``.conjugator`` the Weyl element carrying one to the
    other.
    """
    rd = frame.datum
    i = alpha if isinstance(alpha, int) else rd.root_index(alpha)
    if frame.labels[i] != "N":
        raise WrongLabel(f"root {i} is {frame.labels[i]}, not noncompact imaginary")
    new_sigma = la.mat_mul(frame.sigma, rd.reflection_matrix(i))
    labels = list(_regrade_after_reflection(frame, i, new_sigma))
    labels[i] = labels[rd.neg(i)] = "R"
    if entry is None:
        entry = frame.entry
    f, w = match_frame(rd, new_sigma, labels, entry.frames)
    if f is None:
        raise InconsistentFrame(frame.name, "Cayley image not in catalog")
    return _transported(f, w, new_sigma, labels, rd)


def inverse_cayley(frame, alpha, entry=None):
    """Inverse Cayley transform through a real root; the root becomes noncompact."""
    rd = frame.datum
    i = alpha if isinstance(alpha, int) else rd.root_index(alpha)
    if frame.labels[i] != "R":
        raise WrongLabel(f"root {i} is {frame.labels[i]}, not real")
    new_sigma = la.mat_mul(frame.sigma, rd.reflection_matrix(i))
    labels = list(_regrade_after_reflection(frame, i, new_sigma))
    labels[i] = labels[rd.neg(i)] = "N"
    if entry is None:
        entry = frame.entry
    f, w = match_frame(rd, new_sigma, labels, entry.frames)
    if f is None:
        raise InconsistentFrame(frame.name, "inverse Cayley image not in catalog")
    return _transported(f, w, new_sigma, labels, rd)


def real_weyl_group(frame, entry=None, connected_only=False):
    """Matrices of W(G,h): reflections in real and compact roots, s_b s_{sigma b} for
    orthogonal complex pairs, s_a for noncompact a with sigma b = s_a b for some
    complex b, closed under products and extended by the component automorphisms
    that preserve this frame.
    """
    rd = frame.datum
    key = ("realweyl", frame.name, connected_only)
    if entry is not None and key in entry._cache:
        return entry._cache[key]
    gens = []
    for i in range(rd.npos):
        lab = frame.labels[i]
        if lab in "RC":
            gens.append(rd.reflection_matrix(i))
        elif lab == "N":
            si = rd.reflection_matrix(i)
            for j in frame.roots_with("X"):
                if la.mat_vec(si, rd.roots[j]) == rd.roots[frame.sigma_perm[j]]:
                    gens.append(si)
                    break
        elif lab == "X":
            j = frame.sigma_perm[i]
            if la.dot(rd.roots[i], rd.coroots[j]) == 0:
                gens.append(la.mat_mul(rd.reflection_matrix(i), rd.reflection_matrix(j)))
    if not connected_only and entry is not None:
        for a in entry.automorphisms:
            dst, m = a.maps[frame.name]
            if dst == frame.name:
                gens.append(m)
    group = _close(gens, rd.rank)
    if entry is not None:
        entry._cache[key] = group
    return group


def _close(gens, r):
    ident = la.identity(r)
    elems = {ident: None}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = la.mat_mul(g, m)
                if p not in elems:
                    elems[p] = None
                    order.append(p)
                    nxt.append(p)
        frontier = nxt
    return order


_BUILTIN = None


def builtin_source():
    return resources.files("orbitlab.realform").joinpath("data/catalog.txt").read_text()


def builtin_catalog():
    global _BUILTIN
    if _BUILTIN is None:
        _BUILTIN = {g.name: g for g in load_catalog(builtin_source())}
    return _BUILTIN


def builtin_names():
    return ("su2", "sl2R", "psl2R", "gl2R", "sl3R", "sp4R", "su2xsu2_swap", "sl2Rsq_swap")


def get_group(name):
    cat = builtin_catalog()
    if name not in cat:
        raise KeyError(f"unknown group {name!r}")
    return cat[name]
