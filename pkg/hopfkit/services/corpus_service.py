"""
Corpus service.
Bundled example inputs (group and monoid algebras, finite-set monads, presheaf
posets) and the loader that turns a path or a corpus name into a validated
input document.
"""
import json
import logging
from pathlib import Path
from typing import Callable, Dict, List

from pydantic import ValidationError

from hopfkit.config import settings
from hopfkit.errors import InputError
from hopfkit.exact import Field, PrimeField, QQ
from hopfkit.models import ComonoidDocument, InputEnvelope, MonadDocument, PresheafDocument
from hopfkit.services.bialgebra_service import (
    bialgebra_to_document,
    chain_monoid_table,
    cyclic_group_table,
    group_algebra,
    monoid_algebra,
    product_table,
    symmetric_group_table,
    trivial_bialgebra,
)

logger = logging.getLogger(__name__)

FIELDS: Dict[str, Callable[[], Field]] = {
    "Q": lambda: QQ,
    "F2": lambda: PrimeField(2),
    "F3": lambda: PrimeField(3),
}

# Tags of the input union; pydantic reports them as the first location part.
DOCUMENT_KINDS = ("bialgebra", "monad", "presheaf")


def _group_tables():
    tables = {f"Z{n}": (cyclic_group_table(n), [f"g{i}" for i in range(n)]) for n in range(2, 7)}
    z2 = cyclic_group_table(2)
    tables["Z2xZ2"] = (product_table(z2, z2), ["00", "01", "10", "11"])
    tables["S3"] = symmetric_group_table(3)
    return tables


def _two_point_comonoid() -> ComonoidDocument:
    """The comonoid k{x, y} with x, y grouplike, pointed at y."""
    return ComonoidDocument(
        dim=2,
        comult=[[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
        counit=[1, 1],
        grouplike=[0, 1],
        labels=["x", "y"],
    )


def _bialgebra_builders() -> Dict[str, Callable]:
    builders: Dict[str, Callable] = {}
    for group, (table, labels) in _group_tables().items():
        for suffix, make_field in FIELDS.items():
            name = f"group_{group}_{suffix}"

            def build(table=table, labels=labels, make_field=make_field, name=name):
                doc = bialgebra_to_document(group_algebra(table, make_field(), labels, name))
                if len(table) == 2:
                    doc.comonoid = _two_point_comonoid()
                return doc

            builders[name] = build
    for size, stem in ((2, "monoid_idem"), (3, "monoid_chain3")):
        for suffix, make_field in FIELDS.items():
            name = f"{stem}_{suffix}"
            builders[name] = (
                lambda size=size, make_field=make_field, name=name: bialgebra_to_document(
                    monoid_algebra(chain_monoid_table(size), make_field(), [f"z{i}" for i in range(size)], name)
                )
            )
    builders["trivial"] = lambda: bialgebra_to_document(trivial_bialgebra(QQ))
    return builders


BUILTIN_MONADS = {
    "powerset": lambda: MonadDocument(name="powerset", monad="powerset", max_size=3),
    "nonempty_powerset": lambda: MonadDocument(name="nonempty_powerset", monad="nonempty_powerset", max_size=3),
    "identity": lambda: MonadDocument(name="identity", monad="identity", max_size=3),
    "maybe": lambda: MonadDocument(name="maybe", monad="maybe", max_size=3),
}

BUILTIN_PRESHEAVES = {
    "presheaf_chain2": lambda: PresheafDocument(name="presheaf_chain2", size=2, order=[[0, 1]], subterminal=[0]),
    "presheaf_discrete2": lambda: PresheafDocument(
        name="presheaf_discrete2", size=2, order=[], max_component=1, subterminal=[0]
    ),
}


def builtin_corpus() -> Dict[str, Callable]:
    corpus: Dict[str, Callable] = {}
    corpus.update(_bialgebra_builders())
    corpus.update(BUILTIN_MONADS)
    corpus.update(BUILTIN_PRESHEAVES)
    return corpus


def _corpus_dir() -> Path:
    return Path(settings.CORPUS_DIR)


def list_corpus() -> List[str]:
    """Names of every bundled input, built-in or stored in the corpus directory."""
    names = set(builtin_corpus())
    directory = _corpus_dir()
    if directory.is_dir():
        names.update(p.stem for p in directory.glob("*.json"))
    return sorted(names)


def parse_document(text: str, source: str = "<input>"):
    """
    Validate a JSON input document.

    Raises:
        InputError: with the line of a JSON syntax error or the field path of a schema error
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return InputEnvelope.model_validate({"document": data}).document
    except ValidationError as exc:
        first = exc.errors()[0]
        parts = first["loc"][1:]
        if parts and parts[0] in DOCUMENT_KINDS:
            parts = parts[1:]
        loc = ".".join(str(part) for part in parts) or "document"
        raise InputError(f"{source}: field {loc}: {first['msg']}") from None


def load_input(name_or_path: str):
    """
    Resolve an input argument: an existing file path, a file in the corpus
    directory, or a built-in corpus name, in that order.

    Raises:
        InputError: if nothing matches or the document is invalid
    """
    path = Path(name_or_path)
    if path.is_file():
        logger.info("loading input file %s", path)
        return parse_document(path.read_text(encoding="utf-8"), str(path))
    stored = _corpus_dir() / f"{name_or_path}.json"
    if stored.is_file():
        logger.info("loading corpus file %s", stored)
        return parse_document(stored.read_text(encoding="utf-8"), str(stored))
    builders = builtin_corpus()
    if name_or_path in builders:
        return builders[name_or_path]()
    raise InputError(f"no input file or corpus entry named {name_or_path!r}")


def export_corpus(directory: Path) -> List[Path]:
    """Write every built-in corpus entry as <name>.json."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, build in sorted(builtin_corpus().items()):
        target = directory / f"{name}.json"
        target.write_text(build().model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
        written.append(target)
    return written
