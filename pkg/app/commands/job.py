"""
Job configuration shared by every command
"""
import logging
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from app.config import settings
from app.services.cartan_core import CartanData, Weight, cartan_data, root_order
from app.services.errors import DimensionCapError, UnsupportedConfigurationError
from app.services.module_files import load_module
from app.services.qmodules import QModule, sl2_simple_module, unique_highest_weight

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    TEXT = "text"
    STRUCTURED = "structured"


class JobConfig(BaseModel):
    """Validated command input"""
    lie_type: str = "A"
    rank: int = Field(default=1, ge=1)
    weight: Optional[List[int]] = None
    strands: int = Field(default=3, ge=2)
    word: str = ""
    output_format: OutputFormat = OutputFormat(settings.output_format)
    module_file: Optional[str] = None
    order: int = Field(default=settings.series_order, ge=2)
    cap: int = Field(default=settings.dimension_cap, ge=1)

    @field_validator("lie_type", mode="before")
    @classmethod
    def normalize_type(cls, value):
        return str(value).strip().upper()

    @field_validator("weight", mode="before")
    @classmethod
    def parse_weight_text(cls, value):
        if isinstance(value, str):
            try:
                return [int(part) for part in value.replace(" ", "").split(",") if part != ""]
            except ValueError:
                raise ValueError(f"weight {value!r} is not a comma-separated list of integers")
        return value

    @model_validator(mode="after")
    def check_against_cartan_data(self):
        # CartanError is a ValueError, so it surfaces as a validation error
        cd = cartan_data(self.lie_type, self.rank)
        if self.weight is not None:
            cd.check_weight(Weight(tuple(self.weight)))
            if any(c < 0 for c in self.weight):
                raise ValueError(f"weight {self.weight} is not dominant")
        return self

    def cartan(self) -> CartanData:
        return cartan_data(self.lie_type, self.rank)

    def highest_weight(self) -> Weight:
        if self.weight is None:
            return Weight(tuple(1 if i == 0 else 0 for i in range(self.rank)))
        return Weight(tuple(self.weight))

    def root_order(self) -> int:
        return root_order(self.cartan())

    def base_module(self) -> QModule:
        """
        The module V the command works on

        Returns:
            The loaded module file when one is given, the built-in V(m) for A1

        Raises:
            UnsupportedConfigurationError: higher rank without a module file
        """
        if self.module_file:
            return load_module(self.module_file)
        cd = self.cartan()
        if cd.name != "A1":
            raise UnsupportedConfigurationError(
                f"explicit modules for {cd.name} are not built in; pass --module-file"
            )
        return sl2_simple_module(self.highest_weight().coords[0])

    def check_cap(self, dimension: int, what: str):
        if dimension > self.cap:
            raise DimensionCapError(dimension, self.cap, what)


class InstanceInfo(BaseModel):
    """Self-description carried by every report"""
    lie_type: str
    rank: int
    weight: List[int]
    root_order: int
    label: str = ""


def instance_info(config: JobConfig, module: Optional[QModule] = None) -> InstanceInfo:
    if module is not None:
        cd = module.cartan
        weight = unique_highest_weight(module)
        return InstanceInfo(
            lie_type=cd.lie_type.value,
            rank=cd.rank,
            weight=list(weight.coords),
            root_order=module.root_order,
            label=module.label,
        )
    return InstanceInfo(
        lie_type=config.lie_type,
        rank=config.rank,
        weight=list(config.highest_weight().coords),
        root_order=config.root_order(),
    )


def render_instance(info: InstanceInfo) -> str:
    weight = "(" + ",".join(str(c) for c in info.weight) + ")"
    label = f" {info.label}" if info.label else ""
    return f"{info.lie_type}{info.rank} weight {weight}{label}, root order {info.root_order}"
