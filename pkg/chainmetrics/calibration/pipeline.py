"""
Calibration Pipeline
按依赖顺序执行推导步骤，中间量通过上下文在步骤之间传递。
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)


class CalibrationContext(dict):
    """
    校准上下文

    键为量的名称（如 beta、tau），值为数值；
    trace 按执行顺序记录每个推导出的量。
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        object.__setattr__(self, "trace", [])

    def __getattr__(self, name: str) -> Any:
        if name in self:
            return self[name]
        raise AttributeError(f"校准上下文中没有量 '{name}'")

    def __setattr__(self, name: str, value: Any) -> None:
        self[name] = value

    def record(self, name: str, value: Any) -> None:
        """写入推导结果并记入 trace"""
        self[name] = value
        self.trace.append((name, value))


class Step(ABC):
    """推导步骤基类"""

    def __init__(self, name: str):
        self.name = name

    @property
    def requires(self) -> Tuple[str, ...]:
        """需要的输入量"""
        return ()

    @property
    def provides(self) -> Tuple[str, ...]:
        """产出的量"""
        return ()

    @abstractmethod
    def run(self, context: CalibrationContext) -> Any:
        """在上下文上执行，返回本步骤的结果"""


class DerivationStep(Step):
    """
    单个公式

    按 input_keys 的顺序从上下文取值调用 func，结果记为 output_key。
    """

    def __init__(
        self,
        func: Callable[..., Any],
        input_keys: Sequence[str],
        output_key: str,
        name: Optional[str] = None,
    ):
        super().__init__(name or output_key)
        self.func = func
        self.input_keys = tuple(input_keys)
        self.output_key = output_key

    @property
    def requires(self) -> Tuple[str, ...]:
        return self.input_keys

    @property
    def provides(self) -> Tuple[str, ...]:
        return (self.output_key,)

    def run(self, context: CalibrationContext) -> Any:
        missing = [k for k in self.input_keys if k not in context]
        if missing:
            raise KeyError(f"推导 '{self.name}' 缺少输入: {missing}")
        value = self.func(*(context[k] for k in self.input_keys))
        context.record(self.output_key, value)
        return value


class Pipeline(Step):
    """
    推导流程

    构造时检查同一个量不会被推导两次。
    """

    def __init__(self, steps: List[Step], name: str = "calibration"):
        super().__init__(name)
        self.steps = steps
        seen: Set[str] = set()
        for step in steps:
            for key in step.provides:
                if key in seen:
                    raise ValueError(f"量 '{key}' 被多个步骤推导")
                seen.add(key)

    @property
    def provides(self) -> Tuple[str, ...]:
        return tuple(k for step in self.steps for k in step.provides)

    def unresolved(self, available: Sequence[str]) -> Dict[str, List[str]]:
        """按顺序执行时，每个步骤仍缺少的输入（为空表示可以执行）"""
        known = set(available)
        gaps: Dict[str, List[str]] = {}
        for step in self.steps:
            missing = [k for k in step.requires if k not in known]
            if missing:
                gaps[step.name] = missing
            known.update(step.provides)
        return gaps

    def run(self, context: Mapping[str, Any]) -> CalibrationContext:
        """
        执行全部步骤

        Args:
            context: 初始量（dict 会被包装为 CalibrationContext）

        Returns:
            包含所有推导结果的上下文
        """
        if not isinstance(context, CalibrationContext):
            context = CalibrationContext(context)

        logger.info(f"[{self.name}] 开始，初始量: {sorted(context.keys())}")
        for step in self.steps:
            try:
                value = step.run(context)
            except Exception as e:
                logger.error(f"[{self.name}] 步骤 '{step.name}' 失败: {e}")
                raise
            logger.debug(f"[{self.name}] {step.name} = {value!r}")
        logger.info(f"[{self.name}] 完成，共 {len(context.trace)} 个推导量")
        return context
