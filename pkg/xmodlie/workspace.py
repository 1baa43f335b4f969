"""
Loading named algebras, homomorphisms, actions, crossed modules, braidings and
morphisms from JSON definition files.

Indices in files are 1-based; rationals are integers or "p/q" strings.
"""

import json
import logging
import os

from .braid import (
    BraidedMorphism,
    BraidedXMod,
    Braiding,
    braided_morphism_check,
    identity_braided,
    verify_braiding,
)
from .exactla import DimensionError, identity, to_matrix
from .liealg import LieAlgebra, LieAlgebraError, LieHom, adjoint_action, hom_check, verify_lie
from .natensor import TensorProductError, induced_hom, pure_tensor
from .operators import rational
from .tensor_data import IndexingError, TensorData
from .uce import ConstructionError, TensorSquare, tensor_square_xmod
from .xmod import (
    Action,
    CrossedModule,
    XModMorphism,
    verify_action,
    verify_xmod,
    xmod_morphism_check,
)

logger = logging.getLogger(__name__)

CORPUS_DIR = os.path.join(os.path.dirname(__file__), "corpus")

SECTIONS = ("algebras", "homs", "actions", "xmods", "braidings", "morphisms")


class LoadError(RuntimeError):
    "Exception raised while loading a workspace."
    pass


class ParseError(LoadError):
    "A file could not be read or does not follow the format."

    def __init__(self, message, path=None, line=None, column=None):
        where = path or "<input>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


class ResolutionError(LoadError):
    "A name does not resolve, or is defined twice."
    pass


class AxiomError(LoadError):
    """
    A loaded object fails its verifier.

    Attributes:
        obj (str): object name
        axiom (str): failed axiom
        witness (tuple): 0-based basis indices
    """

    def __init__(self, obj, axiom, witness=(), detail=""):
        super().__init__(f"{obj}: {axiom} fails at {tuple(witness)} {detail}".rstrip())
        self.obj = obj
        self.axiom = axiom
        self.witness = tuple(witness)


def corpus_path(name):
    "Path of a shipped corpus file, with or without the .json suffix."
    if not name.endswith(".json"):
        name += ".json"
    return os.path.join(CORPUS_DIR, name)


class Workspace:
    """
    Named tables of loaded objects.

    Attributes:
        algebras, homs, actions, xmods, braidings, morphisms (dict): name -> object
        verdicts (dict): (section, name) -> :class:`Verdict` for every checked object
        expectations (dict): morphism name -> expected classification flags
        sources (list): files loaded, in order
    """

    def __init__(self):
        self.algebras = {}
        self.homs = {}
        self.actions = {}
        self.xmods = {}
        self.braidings = {}
        self.morphisms = {}
        self.verdicts = {}
        self.expectations = {}
        self.sources = []

    def table(self, section):
        return getattr(self, section)

    def get(self, section, name):
        table = self.table(section)
        if name not in table:
            raise ResolutionError(f"Unknown {section[:-1]} {name!r}.")
        return table[name]

    def lookup(self, name):
        "Resolve `name` in any section, braided objects first."
        for section in ("braidings", "xmods", "morphisms", "homs", "actions", "algebras"):
            if name in self.table(section):
                return section, self.table(section)[name]
        raise ResolutionError(f"Unknown name {name!r}.")

    def braided(self, name):
        return self.get("braidings", name)

    def _add(self, section, name, obj):
        table = self.table(section)
        if name in table:
            raise ResolutionError(f"{section[:-1]} {name!r} is defined twice.")
        table[name] = obj


def _read(path):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as err:
        raise ParseError(str(err), path) from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, path, err.lineno, err.colno) from err
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", path)
    unknown = set(doc) - set(SECTIONS) - {"include", "description"}
    if unknown:
        raise ParseError(f"unknown sections {sorted(unknown)}", path)
    for section in SECTIONS:
        if not isinstance(doc.get(section, {}), dict):
            raise ParseError(f"section {section!r} must be an object", path)
    if not isinstance(doc.get("include", []), list):
        raise ParseError("'include' must be a list of paths", path)
    return doc


def _entries(raw, arity, where):
    try:
        out = []
        for e in raw:
            if len(e) != arity + 1:
                raise ParseError(f"{where}: entry {e} needs {arity} indices and a value")
            out.append(tuple(int(i) for i in e[:-1]) + (rational(e[-1]),))
        return out
    except (TypeError, ValueError) as err:
        raise ParseError(f"{where}: {err}") from err


def _sparse(raw, shape, where):
    try:
        return TensorData.from_sparse(_entries(raw, len(shape), where), shape, one_based=True)
    except IndexingError as err:
        raise ParseError(f"{where}: {err}") from err


def _matrix(raw, rows, cols, where):
    try:
        m = to_matrix(raw, shape=(rows, cols))
    except (TypeError, ValueError) as err:
        raise ParseError(f"{where}: {err}") from err
    if m.shape != (rows, cols):
        raise ParseError(f"{where}: matrix of shape {m.shape}, expected {(rows, cols)}")
    return m


def _record(ws, section, name, verdict, check):
    ws.verdicts[(section, name)] = verdict
    if check and not verdict:
        logger.warning("%s %s fails %s at %s", section[:-1], name, verdict.axiom, verdict.witness)
        raise AxiomError(name, verdict.axiom, verdict.witness, verdict.detail)


def _load_algebra(ws, name, spec, check):
    if "abelian" in spec:
        L = LieAlgebra.abelian(int(spec["abelian"]), name=name)
    elif "dim" in spec:
        dim = int(spec["dim"])
        entries = _entries(spec.get("brackets", []), 3, name)
        shifted = [(i - 1, j - 1, k - 1, v) for i, j, k, v in entries]
        for e in shifted:
            if not all(0 <= ix < dim for ix in e[:3]):
                raise ParseError(f"algebra {name!r}: index outside 1..{dim} in {e}")
        try:
            L = LieAlgebra.from_brackets(dim, shifted, name=name, basis_names=spec.get("basis"))
        except LieAlgebraError as err:
            # conflicting mirrored entries are an antisymmetry violation
            raise AxiomError(name, "antisymmetry", (), str(err)) from err
    else:
        raise ParseError(f"algebra {name!r} needs 'abelian' or 'dim'")
    _record(ws, "algebras", name, verify_lie(L), check)
    return L


def _load_hom(ws, name, spec, check):
    if "identity" in spec:
        L = ws.get("algebras", spec["identity"])
        return LieHom.identity(L)
    S = ws.get("algebras", spec["source"])
    T = ws.get("algebras", spec["target"])
    if spec.get("zero"):
        f = LieHom.zero(S, T)
    else:
        f = LieHom(S, T, _matrix(spec["matrix"], T.dim, S.dim, name))
    _record(ws, "homs", name, hom_check(f), check)
    return f


def _action(ws, actor, module, spec, where):
    if spec in (None, "zero"):
        return Action.zero(actor, module)
    if spec == "adjoint":
        if actor is not module:
            raise ResolutionError(f"{where}: adjoint action needs one algebra")
        return adjoint_action(actor)
    if isinstance(spec, str):
        return ws.get("actions", spec)
    return Action(actor, module, _sparse(spec, (actor.dim, module.dim, module.dim), where))


def _load_action(ws, name, spec, check):
    N = ws.get("algebras", spec["actor"])
    M = ws.get("algebras", spec["module"])
    act = _action(ws, N, M, spec.get("entries", "zero"), name)
    _record(ws, "actions", name, verify_action(act), check)
    return act


def _load_xmod(ws, name, spec, check):
    construction = spec.get("construction")
    if construction == "identity":
        x = identity_braided(ws.get("algebras", spec["of"]), name=name).xmod
    elif construction == "tensor_square":
        x = tensor_square_xmod(ws.get("algebras", spec["of"]), verify=False)
        x.xmod.name = name
        x.name = name
    elif construction is None:
        M = ws.get("algebras", spec["M"])
        N = ws.get("algebras", spec["N"])
        boundary = spec.get("boundary", "zero")
        if boundary == "zero":
            d = LieHom.zero(M, N)
        elif isinstance(boundary, str):
            d = ws.get("homs", boundary)
        else:
            d = LieHom(M, N, _matrix(boundary, N.dim, M.dim, name))
        x = CrossedModule(M, N, d, _action(ws, N, M, spec.get("action"), name), name=name)
    else:
        raise ParseError(f"xmod {name!r}: unknown construction {construction!r}")
    xm = x.xmod if isinstance(x, BraidedXMod) else x
    _record(ws, "xmods", name, verify_xmod(xm), check)
    return x


def _underlying(x):
    return x.xmod if isinstance(x, BraidedXMod) else x


def _load_braiding(ws, name, spec, check):
    base = ws.get("xmods", spec["xmod"])
    x = _underlying(base)
    construction = spec.get("construction")
    if construction == "bracket":
        if x.M.dim != x.N.dim:
            raise ResolutionError(f"{name}: bracket braiding needs M and N of one dimension")
        b = Braiding(x, x.M.c.copy())
    elif construction == "tensor":
        if not isinstance(base, TensorSquare):
            raise ResolutionError(f"{name}: tensor braiding needs a tensor_square xmod")
        b = base.braiding
    elif construction == "zero":
        b = Braiding.zero(x)
    elif construction is None:
        b = Braiding(x, _sparse(spec.get("entries", []), (x.N.dim, x.N.dim, x.M.dim), name))
    else:
        raise ParseError(f"braiding {name!r}: unknown construction {construction!r}")
    if spec.get("negate"):
        b = b.negated()
    if isinstance(base, TensorSquare) and construction == "tensor":
        bx = TensorSquare(x, b, base.presentation, name=name)
    else:
        bx = BraidedXMod(x, b, name=name)
    _record(ws, "braidings", name, verify_braiding(bx), check)
    return bx


def _component(ws, spec, source, target, which, where):
    S = source.M if which == 1 else source.N
    T = target.M if which == 1 else target.N
    if spec == "identity":
        return LieHom(S, T, identity(S.dim))
    if spec == "zero":
        return LieHom.zero(S, T)
    if isinstance(spec, str):
        return ws.get("homs", spec)
    if not isinstance(spec, dict):
        raise ParseError(f"{where}: component {spec!r} is not a name or an object")
    if "matrix" in spec:
        return LieHom(S, T, _matrix(spec["matrix"], T.dim, S.dim, where))
    if "induced" in spec:
        f, g = (ws.get("homs", n) for n in spec["induced"])
        if not (isinstance(source, TensorSquare) and isinstance(target, TensorSquare)):
            raise ResolutionError(f"{where}: induced maps need tensor_square objects")
        try:
            return induced_hom(source.presentation, target.presentation, f, g)
        except TensorProductError as err:
            raise AxiomError(where, err.condition, err.witness, str(err)) from err
    raise ParseError(f"{where}: component must be a name, 'identity', 'zero', matrix or induced")


def _load_morphism(ws, name, spec, check):
    src_section, source = ws.lookup(spec["source"])
    tgt_section, target = ws.lookup(spec["target"])
    braided = src_section == "braidings" and tgt_section == "braidings"
    f1 = _component(ws, spec.get("f1", "identity"), source, target, 1, name)
    f2 = _component(ws, spec.get("f2", "identity"), source, target, 2, name)
    if braided:
        phi = BraidedMorphism(source, target, f1, f2)
        verdict = braided_morphism_check(phi)
    else:
        phi = XModMorphism(_underlying(source), _underlying(target), f1, f2)
        verdict = xmod_morphism_check(phi)
    _record(ws, "morphisms", name, verdict, check)
    if "expect" in spec:
        ws.expectations[name] = dict(spec["expect"])
    return phi


LOADERS = {
    "algebras": _load_algebra,
    "homs": _load_hom,
    "actions": _load_action,
    "xmods": _load_xmod,
    "braidings": _load_braiding,
    "morphisms": _load_morphism,
}


def load(paths, check=True, workspace=None):
    """
    Load definition files into a workspace.

    Args:
        paths (list of str): files, loaded in order; included files first
        check (bool): raise :class:`AxiomError` on the first failing verifier;
            otherwise failures are only recorded in `verdicts`
        workspace (:class:`Workspace`, optional): extend an existing workspace

    Returns:
        :class:`Workspace`

    Raises:
        ParseError, ResolutionError, AxiomError
    """
    ws = workspace or Workspace()
    if isinstance(paths, str):
        paths = [paths]
    for path in paths:
        _load_file(ws, os.path.abspath(path), check)
    return ws


def _load_file(ws, path, check):
    if path in ws.sources:
        return
    doc = _read(path)
    for inc in doc.get("include", []):
        _load_file(ws, os.path.abspath(os.path.join(os.path.dirname(path), inc)), check)
    ws.sources.append(path)
    for section in SECTIONS:
        for name, spec in doc.get(section, {}).items():
            if not isinstance(spec, dict):
                raise ParseError(f"{section} {name!r}: definition must be an object", path)
            try:
                obj = LOADERS[section](ws, name, spec, check)
            except KeyError as err:
                raise ParseError(f"{section} {name!r}: missing field {err}", path) from err
            except (DimensionError, ValueError, TypeError) as err:
                raise ParseError(f"{section} {name!r}: {err}", path) from err
            except (TensorProductError, ConstructionError) as err:
                raise AxiomError(name, getattr(err, "condition", None) or "construction", (), str(err)) from err
            ws._add(section, name, obj)
            logger.debug("loaded %s %s from %s", section[:-1], name, path)
    return ws


def load_corpus(*names, check=True):
    "Load shipped corpus files by name."
    return load([corpus_path(n) for n in names], check=check)


def pure(ws, name, m, n):
    "m (x) n inside the tensor product underneath a tensor_square object."
    obj = ws.lookup(name)[1]
    if not isinstance(obj, TensorSquare):
        raise ResolutionError(f"{name!r} is not built on a tensor product")
    return pure_tensor(obj.presentation, m, n)
