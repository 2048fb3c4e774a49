"""
Metrics Logger - Tracks timings and outcomes of constructions and verification checks
"""
import json
import logging
from typing import Dict, Any
from datetime import datetime
from pathlib import Path
import threading
from collections import defaultdict, deque

from app.config import settings

logger = logging.getLogger(__name__)

class MetricsLogger:
    """Singleton class for logging computation metrics"""

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """Initialize metrics logger"""
        if self._initialized:
            return

        self._initialized = True
        self.enabled = settings.metrics_enabled
        self.metrics_file = Path(settings.metrics_file)
        self._write_lock = threading.Lock()

        # In-memory metrics storage (last 1000 entries per metric type)
        self.metrics = {
            "check": deque(maxlen=1000),
            "construction": deque(maxlen=1000)
        }

        # Aggregated timings per check or construction kind
        self.aggregated = defaultdict(lambda: {
            "count": 0,
            "total_time": 0,
            "avg_time": 0,
            "min_time": float('inf'),
            "max_time": 0
        })
        self.outcomes = defaultdict(lambda: defaultdict(int))

    def _write_metric(self, metric_type: str, data: Dict[str, Any]):
        """Append a metric to the JSONL file"""
        if not self.enabled:
            return
        try:
            metric_entry = {
                "timestamp": datetime.now().isoformat(),
                "type": metric_type,
                "data": data
            }

            with self._write_lock:
                self.metrics_file.parent.mkdir(parents=True, exist_ok=True)
                with open(self.metrics_file, "a") as f:
                    f.write(json.dumps(metric_entry) + "\n")
        except Exception as e:
            logger.error(f"Error writing metric: {str(e)}")

    def log_check(self, name: str, status: str, elapsed_ms: float, dimension: int = 0):
        """Log the outcome of one verification identity"""
        metric = {
            "name": name,
            "status": status,
            "elapsed_ms": elapsed_ms,
            "dimension": dimension
        }

        self.metrics["check"].append(metric)
        self._write_metric("check", metric)
        self._update_aggregated(f"check_{name}", elapsed_ms)
        self.outcomes[name][status] += 1

    def log_construction(self, kind: str, dimension: int, elapsed_ms: float):
        """Log a module, braiding or representation build"""
        metric = {
            "kind": kind,
            "dimension": dimension,
            "elapsed_ms": elapsed_ms
        }

        self.metrics["construction"].append(metric)
        self._write_metric("construction", metric)
        self._update_aggregated(f"construction_{kind}", elapsed_ms)

    def _update_aggregated(self, key: str, time_ms: float):
        """Update aggregated metrics"""
        agg = self.aggregated[key]
        agg["count"] += 1
        agg["total_time"] += time_ms
        agg["avg_time"] = agg["total_time"] / agg["count"]
        agg["min_time"] = min(agg["min_time"], time_ms)
        agg["max_time"] = max(agg["max_time"], time_ms)

    def get_check_metrics(self) -> Dict[str, Any]:
        """Get verification metrics summary"""
        checks = list(self.metrics["check"])[-100:]
        return {
            "total_checks": len(checks),
            "by_name": {name: dict(counts) for name, counts in self.outcomes.items()},
            "failed": [m for m in checks if m["status"] == "fail"],
            "recent": checks[-10:] if checks else []
        }

    def get_system_metrics(self) -> Dict[str, Any]:
        """Get overall metrics"""
        constructions = list(self.metrics["construction"])[-100:]
        return {
            "timestamp": datetime.now().isoformat(),
            "aggregated": dict(self.aggregated),
            "checks": self.get_check_metrics(),
            "constructions": {
                "total": len(constructions),
                "largest_dimension": max((m["dimension"] for m in constructions), default=0),
                "recent": constructions[-5:]
            }
        }

    def reset(self):
        """Drop the in-memory history"""
        for store in self.metrics.values():
            store.clear()
        self.aggregated.clear()
        self.outcomes.clear()
