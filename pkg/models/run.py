"""运行配置与运行记录模型"""
import os
import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

# 默认种子固定，保证默认运行可复现
DEFAULT_SEED = 20120901
DEFAULT_ENUM_CAP = 16
DEFAULT_BRUTE_CAP = 8
DEFAULT_CANONICAL_CAP = 12
DEFAULT_EVALUATION_BUDGET = 100_000_000
DEFAULT_TOLERANCE = 1e-8
DEFAULT_TRIALS = 20
ENUM_CAP_ENV = "INVARIANTS_ENUM_CAP"

OUTPUT_FORMATS = ("text", "json", "dot", "newick")
GROUP_KINDS = ("real", "cayley", "both")


def env_enum_cap(default: int = DEFAULT_ENUM_CAP) -> int:
    """读取环境变量中的枚举上限，无效值忽略"""
    raw = os.environ.get(ENUM_CAP_ENV, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass
class RunConfig:
    """一次计算的完整参数"""
    command: str
    r: int = 1
    m: int = 0
    dims: List[int] = field(default_factory=list)
    orbit: int = 1
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    tolerance: float = DEFAULT_TOLERANCE
    kind: str = "both"
    output: str = "text"  # text, json, dot, newick
    r_max: int = 8
    m_max: int = 6

    # 规模上限
    enum_cap: int = DEFAULT_ENUM_CAP
    brute_cap: int = DEFAULT_BRUTE_CAP
    canonical_cap: int = DEFAULT_CANONICAL_CAP
    evaluation_budget: int = DEFAULT_EVALUATION_BUDGET
    threads: int = 0  # 0 表示使用全部可用核心

    # trees 子命令
    matching: Optional[str] = None
    newick: Optional[str] = None
    act: Optional[str] = None
    forest_file: Optional[str] = None
    dot_dir: Optional[str] = None
    tensor_file: Optional[str] = None

    def resolved_dims(self) -> List[int]:
        """未给出 dims 时取稳定维数 n_i = 2m (至少为 1)"""
        return list(self.dims) if self.dims else [max(1, 2 * self.m)] * self.r

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "r": self.r,
            "m": self.m,
            "dims": list(self.dims),
            "orbit": self.orbit,
            "seed": self.seed,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "kind": self.kind,
            "output": self.output,
            "r_max": self.r_max,
            "m_max": self.m_max,
            "enum_cap": self.enum_cap,
            "brute_cap": self.brute_cap,
            "canonical_cap": self.canonical_cap,
            "evaluation_budget": self.evaluation_budget,
            "threads": self.threads,
            "matching": self.matching,
            "newick": self.newick,
            "act": self.act,
            "forest_file": self.forest_file,
            "dot_dir": self.dot_dir,
            "tensor_file": self.tensor_file,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        return cls(
            command=data["command"],
            r=data.get("r", 1),
            m=data.get("m", 0),
            dims=list(data.get("dims") or []),
            orbit=data.get("orbit", 1),
            seed=data.get("seed", DEFAULT_SEED),
            trials=data.get("trials", DEFAULT_TRIALS),
            tolerance=data.get("tolerance", DEFAULT_TOLERANCE),
            kind=data.get("kind", "both"),
            output=data.get("output", "text"),
            r_max=data.get("r_max", 8),
            m_max=data.get("m_max", 6),
            enum_cap=data.get("enum_cap", env_enum_cap()),
            brute_cap=data.get("brute_cap", DEFAULT_BRUTE_CAP),
            canonical_cap=data.get("canonical_cap", DEFAULT_CANONICAL_CAP),
            evaluation_budget=data.get("evaluation_budget", DEFAULT_EVALUATION_BUDGET),
            threads=data.get("threads", 0),
            matching=data.get("matching"),
            newick=data.get("newick"),
            act=data.get("act"),
            forest_file=data.get("forest_file"),
            dot_dir=data.get("dot_dir"),
            tensor_file=data.get("tensor_file"),
        )


@dataclass
class RunRecord:
    """一次命令执行的结果记录"""
    success: bool
    message: str
    command: str
    timestamp: datetime = field(default_factory=datetime.now)
    duration: float = 0.0
    error: Optional[str] = None


class RunLedger:
    """运行历史账本，线程安全，容量有限"""

    def __init__(self, max_history: int = 200):
        self.history: deque = deque(maxlen=max(1, max_history))
        self._lock = threading.RLock()

    def record(self, record: RunRecord):
        with self._lock:
            self.history.append(record)

    def recent(self, n: int = 10) -> List[RunRecord]:
        """最近 n 条记录，新记录在后"""
        with self._lock:
            if n <= 0:
                return []
            return list(self.history)[-n:]

    def statistics(self) -> Dict[str, Any]:
        """运行统计信息"""
        with self._lock:
            records = list(self.history)
            total = len(records)
            success = len([r for r in records if r.success])
            recent = records[-50:]
            return {
                "total_runs": total,
                "by_command": dict(Counter(r.command for r in records)),
                "success_rate": round(success / total * 100, 2) if total else 100.0,
                "recent_failures": len([r for r in recent if not r.success]),
                "total_duration": round(sum(r.duration for r in records), 3),
            }
