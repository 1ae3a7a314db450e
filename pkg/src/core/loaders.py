"""
JSON loaders and writers for mclab files.

Loaders validate with the pydantic schemas and turn every failure into a
ParseError naming the offending record.
"""
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from config.settings import RUN_CONFIG
from .classes import ConceptClass, FiniteDistribution, LabeledExample, Menu, Sample
from .errors import ParseError
from .schemas import ConceptClassFile, DistributionFile, MenuFile, SampleFile

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)
PathLike = Union[str, Path]


def _format_location(loc) -> str:
    """Render a pydantic error location as ``field[3].sub``."""
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out or "<root>"


def read_json(path: PathLike) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError(f"File not found: {path}", details={"path": str(path)})
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e.msg} at line {e.lineno}", details={"path": str(path)})


def parse_model(payload: Any, model: Type[ModelT], source: str = "<input>") -> ModelT:
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        record = _format_location(first["loc"])
        raise ParseError(
            f"{source}: invalid {record}: {first['msg']}",
            details={"record": record, "source": source},
        )


def read_model(path: PathLike, model: Type[ModelT]) -> ModelT:
    return parse_model(read_json(path), model, source=str(path))


def class_from_model(model: ConceptClassFile) -> ConceptClass:
    return ConceptClass(model.domain_size, tuple(tuple(word) for word in model.hypotheses))


def class_to_model(concept_class: ConceptClass) -> ConceptClassFile:
    return ConceptClassFile(
        domain_size=concept_class.domain_size,
        hypotheses=[list(word) for word in concept_class.hypotheses],
    )


def parse_probability(raw: Union[str, float, int]) -> Union[Fraction, float]:
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"probability {raw!r} is not a fraction")
    if isinstance(raw, int):
        return Fraction(raw)
    return float(raw)


def load_class(path: PathLike) -> ConceptClass:
    concept_class = class_from_model(read_model(path, ConceptClassFile))
    logger.debug(f"Loaded class with {len(concept_class)} words over {concept_class.domain_size} points from {path}")
    return concept_class


def load_sample(path: PathLike) -> Sample:
    model = read_model(path, SampleFile)
    for k, (x, y) in enumerate(model.root):
        if x < 0 or y < 0:
            raise ParseError(f"{path}: invalid [{k}]: negative entry", details={"record": f"[{k}]"})
    return Sample.from_pairs(model.root)


def distribution_from_model(model: DistributionFile) -> FiniteDistribution:
    atoms = tuple(
        (LabeledExample(atom.x, atom.y), parse_probability(atom.p)) for atom in model.atoms
    )
    return FiniteDistribution(atoms)


def load_distribution(path: PathLike) -> FiniteDistribution:
    return distribution_from_model(read_model(path, DistributionFile))


def menu_from_model(model: MenuFile) -> Menu:
    return Menu(tuple((int(x), frozenset(labels)) for x, labels in model.entries.items()), model.p)


def menu_to_model(mu: Menu) -> MenuFile:
    return MenuFile(p=mu.p, entries={str(x): labels for x, labels in mu.to_dict().items()})


def load_menu(path: PathLike) -> Menu:
    return menu_from_model(read_model(path, MenuFile))


def dumps(payload: Any) -> str:
    """Serialize deterministically (sorted keys, fixed indent)."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, indent=RUN_CONFIG["json_indent"]) + "\n"


def write_output(text: str, output: PathLike = None) -> None:
    """Write to ``output`` or stdout when it is None or '-'."""
    if output is None or str(output) == "-":
        sys.stdout.write(text)
        return
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"Wrote {output}")
