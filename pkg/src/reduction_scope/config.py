"""Run configuration and field/curve/group descriptors.

Config files are YAML. Every numeric value is an integer; floats are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .classify import ReductionType
from .density import BUILTIN_TABLES, GroupClassTable
from .elliptic import BUILTIN_CURVES, EllipticCurveQ
from .errors import ConfigError, ReductionScopeError
from .numberfield import NumberField


def parse_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ConfigError(f"{what}: expected an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{what}: expected an integer, got {value!r}") from None


def parse_int_list(value: Any, what: str) -> list[int]:
    if isinstance(value, str):
        value = [v for v in value.replace(" ", "").split(",") if v]
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{what}: expected a nonempty integer list")
    return [parse_int(v, what) for v in value]


@dataclass(frozen=True)
class FieldDescriptor:
    """A CM field K with optional totally real subfield K0 and group data."""

    field: NumberField
    k0: Optional[NumberField] = None
    galois: bool = False
    group: Optional[GroupClassTable] = None
    other_rule: Optional[ReductionType] = None

    @property
    def label(self) -> str:
        return self.field.label or ",".join(map(str, self.field.defining_poly))

    def to_dict(self) -> dict:
        return {
            "label": self.field.label,
            "poly": list(self.field.defining_poly),
            "k0_poly": list(self.k0.defining_poly) if self.k0 else None,
            "galois": self.galois,
            "group": self.group.to_dict() if self.group else None,
            "other_rule": self.other_rule.value if self.other_rule else None,
        }


def resolve_group(spec: Union[str, dict, None], extra: dict[str, GroupClassTable]) -> Optional[GroupClassTable]:
    if spec is None:
        return None
    if isinstance(spec, dict):
        try:
            return GroupClassTable.from_dict(spec)
        except (KeyError, TypeError, ValueError, ReductionScopeError) as e:
            raise ConfigError(f"bad inline group table: {e}") from None
    if spec in extra:
        return extra[spec]
    if spec in BUILTIN_TABLES:
        return BUILTIN_TABLES[spec]
    raise ConfigError(f"unknown group {spec!r}")


def field_from_dict(d: dict, groups: Optional[dict[str, GroupClassTable]] = None) -> FieldDescriptor:
    if not isinstance(d, dict) or "poly" not in d:
        raise ConfigError("field description needs a 'poly' key")
    label = d.get("label")
    try:
        K = NumberField(tuple(parse_int_list(d["poly"], "poly")), label=label)
        K0 = None
        if d.get("k0_poly") is not None:
            K0 = NumberField(tuple(parse_int_list(d["k0_poly"], "k0_poly")), label=f"{label}_0" if label else None)
    except ConfigError:
        raise
    except ReductionScopeError as e:
        raise ConfigError(str(e)) from None
    if K0 is not None and 2 * K0.degree != K.degree:
        raise ConfigError("k0_poly must have half the degree of poly")
    galois = d.get("galois", False)
    if not isinstance(galois, bool):
        raise ConfigError("galois must be true or false")
    rule = d.get("other_rule")
    if rule is not None:
        try:
            rule = ReductionType(rule)
        except ValueError:
            raise ConfigError(f"unknown reduction type {rule!r}") from None
        if not galois:
            raise ConfigError("other_rule is only allowed on fields flagged galois")
    return FieldDescriptor(K, K0, galois, resolve_group(d.get("group"), groups or {}), rule)


def curve_from_dict(d: dict) -> EllipticCurveQ:
    if not isinstance(d, dict) or "ainvs" not in d:
        raise ConfigError("curve description needs an 'ainvs' key")
    try:
        return EllipticCurveQ.from_ainvs(parse_int_list(d["ainvs"], "ainvs"), d.get("label"))
    except ReductionScopeError as e:
        raise ConfigError(str(e)) from None


BUILTIN_FIELDS: dict[str, dict] = {
    "zeta5": {
        "label": "zeta5",
        "poly": [1, 1, 1, 1, 1],
        "galois": True,
        "group": "C4",
        # Jacobian of y^2 = x^5 - 1: non-Hodge-Witt at every p != 1 mod 5
        "other_rule": "NonHodgeWitt",
    },
    "d4": {"label": "d4", "poly": [89, 0, 134, 0, 1], "k0_poly": [-11, 0, 1], "group": "D4"},
    "qi": {"label": "qi", "poly": [1, 0, 1], "galois": True, "group": "C2"},
    "qzeta3": {"label": "qzeta3", "poly": [1, 1, 1], "galois": True, "group": "C2"},
}


def builtin_field(name: str) -> FieldDescriptor:
    if name not in BUILTIN_FIELDS:
        raise ConfigError(f"unknown field {name!r}; built-ins: {', '.join(BUILTIN_FIELDS)}")
    return field_from_dict(BUILTIN_FIELDS[name])


def builtin_curve(name: str) -> EllipticCurveQ:
    if name not in BUILTIN_CURVES:
        raise ConfigError(f"unknown curve {name!r}; built-ins: {', '.join(BUILTIN_CURVES)}")
    return BUILTIN_CURVES[name]


@dataclass
class RunConfig:
    fields: dict[str, FieldDescriptor] = field(default_factory=dict)
    curves: dict[str, EllipticCurveQ] = field(default_factory=dict)
    groups: dict[str, GroupClassTable] = field(default_factory=dict)
    bound: int = 10_000
    output_dir: Path = Path("out")
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.bound < 2:
            raise ConfigError("bound must be >= 2")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def get_field(self, name: str) -> FieldDescriptor:
        if name in self.fields:
            return self.fields[name]
        return builtin_field(name)

    def get_curve(self, name: str) -> EllipticCurveQ:
        if name in self.curves:
            return self.curves[name]
        return builtin_curve(name)

    def get_group(self, name: str) -> GroupClassTable:
        table = resolve_group(name, self.groups)
        assert table is not None
        return table


def load_yaml(path: Union[str, Path]) -> Any:
    try:
        with open(path) as fh:
            return yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed YAML in {path}: {e}") from None


def run_config_from_dict(d: Optional[dict]) -> RunConfig:
    d = d or {}
    if not isinstance(d, dict):
        raise ConfigError("config must be a mapping")
    groups = {}
    for g in d.get("groups") or []:
        table = resolve_group(g, {})
        if not table.name:
            raise ConfigError("config groups need a name")
        groups[table.name] = table
    fields = {}
    for f in d.get("fields") or []:
        desc = field_from_dict(f, groups)
        fields[desc.label] = desc
    curves = {}
    for c in d.get("curves") or []:
        E = curve_from_dict(c)
        curves[str(E)] = E
    return RunConfig(
        fields=fields,
        curves=curves,
        groups=groups,
        bound=parse_int(d.get("bound", 10_000), "bound"),
        output_dir=Path(d.get("output_dir", "out")),
        workers=parse_int(d.get("workers", 1), "workers"),
        seed=parse_int(d.get("seed", 0), "seed"),
    )


def load_config(path: Optional[Union[str, Path]]) -> RunConfig:
    if path is None:
        return RunConfig()
    return run_config_from_dict(load_yaml(path))
