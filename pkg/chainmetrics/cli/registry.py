"""Registry - 子命令注册表"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Type

from pydantic import BaseModel, ValidationError

from ..dataio import ResultDocument
from ..errors import UsageError


@dataclass
class RunContext:
    """
    一次 CLI 调用的运行环境

    Attributes:
        seed: 主种子（显式给出或随机生成后记录）
        workers: 模拟线程数
        stream_size: 每个随机数流的试验次数
        preset: 预设名称（可选）
        metadata: 写入 ResultDocument 的公共元数据
    """
    seed: int
    workers: int = 1
    stream_size: int = 65536
    preset: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Command:
    """
    子命令定义

    Attributes:
        name: 子命令名称
        func: 处理函数，签名 (args, run) -> ResultDocument
        args_schema: Pydantic 参数模型，用于校验与类型转换
        help: 说明
    """
    name: str
    func: Callable[[BaseModel, RunContext], ResultDocument]
    args_schema: Type[BaseModel]
    help: str = ""

    def __post_init__(self):
        if not self.help and self.func.__doc__:
            self.help = self.func.__doc__.strip().split("\n")[0]

    def validate(self, params: Dict[str, Any]) -> BaseModel:
        """校验参数，失败时抛出 UsageError"""
        try:
            return self.args_schema(**params)
        except ValidationError as e:
            err = e.errors()[0]
            where = ".".join(str(x) for x in err.get("loc", ())) or self.name
            raise UsageError(f"{self.name}: 参数 {where} 无效: {err['msg']}") from e

    def call(self, params: Dict[str, Any], run: RunContext) -> ResultDocument:
        """校验参数后执行"""
        return self.func(self.validate(params), run)


class CommandRegistry:
    """
    子命令注册表

    用法:
        commands = CommandRegistry()

        @commands.command("attack-prob", args_schema=AttackProbArgs)
        def attack_prob(args, run): ...
    """

    def __init__(self):
        self._commands: Dict[str, Command] = {}

    def command(self, name: str, args_schema: Type[BaseModel], help: str = ""):
        """装饰器注册"""
        def decorator(func):
            self._commands[name] = Command(name=name, func=func, args_schema=args_schema, help=help)
            return func
        return decorator

    def get(self, name: str) -> Command:
        """获取子命令"""
        if name not in self._commands:
            raise UsageError(f"未知子命令 '{name}'，可用的有: {self.list_commands()}")
        return self._commands[name]

    def call(self, name: str, params: Dict[str, Any], run: RunContext) -> ResultDocument:
        """调用子命令"""
        return self.get(name).call(params, run)

    def list_commands(self) -> List[str]:
        """列出所有子命令名称"""
        return list(self._commands.keys())
