"""
FilePath: /lie_quotient_rep/src/core/cache.py
Description:
    线程安全的记忆化缓存

    计算在锁外执行，写入时先到先得，所有读者看到同一个值。
"""

import logging
import threading
from typing import Any, Callable, Dict, Hashable, Optional

from src.core.config import settings

logger = logging.getLogger(__name__)


class MemoCache:
    def __init__(self, max_size: Optional[int] = None, name: str = "memo"):
        self.max_size = max_size if max_size is not None else settings.STRAIGHTEN_CACHE_SIZE
        self.name = name
        self.hits = 0
        self.misses = 0
        self._cache: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()
        logger.debug("MemoCache[%s] initialized with max_size=%d", name, self.max_size)

    def set(self, key: Hashable, value: Any) -> Any:
        """写入并返回最终保存的值（已存在时保留旧值）"""
        with self._lock:
            if key in self._cache:
                return self._cache[key]
            if self.max_size <= 0:
                return value
            if len(self._cache) >= self.max_size:
                # FIFO：dict 保持插入顺序
                oldest = next(iter(self._cache))
                del self._cache[oldest]
                logger.debug("MemoCache[%s] evicted oldest entry", self.name)
            self._cache[key] = value
            return value

    def get(self, key: Hashable) -> Optional[Any]:
        with self._lock:
            if key in self._cache:
                self.hits += 1
                return self._cache[key]
            self.misses += 1
            return None

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        读取缓存，未命中时计算并写入

        Args:
            key: 缓存键
            compute: 无参计算函数，必须是纯函数

        Returns:
            缓存中的值（并发写入时以先写入者为准）
        """
        with self._lock:
            if key in self._cache:
                self.hits += 1
                return self._cache[key]
            self.misses += 1
        value = compute()
        return self.set(key, value)

    def delete(self, key: Hashable) -> bool:
        """
        删除特定键的缓存

        Returns:
            如果键存在并被删除则返回 True，否则返回 False
        """
        with self._lock:
            if key in self._cache:
                del self._cache[key]
                logger.debug("MemoCache[%s] deleted key", self.name)
                return True
            return False

    def clear(self):
        with self._lock:
            cache_size = len(self._cache)
            self._cache.clear()
            self.hits = 0
            self.misses = 0
        logger.debug("MemoCache[%s] cleared: removed %d entries", self.name, cache_size)

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)
