# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Write-once caching for exact tables.

Stirling tables, polynomial sequences and special sequences are expensive to
rebuild and never change once computed, so they are memoized per argument key.
The cache is an idempotent write-once map: concurrent builders may race, but
the first stored value wins and every reader sees the same object. The map is
bounded; once full, the oldest table is evicted.
"""

import logging
import threading
from collections.abc import Callable
from functools import wraps
from typing import Any

logger = logging.getLogger(__name__)

MAX_CACHED_TABLES = 256

_cache: dict[tuple, Any] = {}
_lock = threading.Lock()


def _cache_key(namespace: str, args: tuple, kwargs: dict) -> tuple:
	# Fraction(c) and LambdaPoly.constant(c) compare equal; the type keeps the modes apart
	typed_args = tuple((type(a), a) for a in args)
	typed_kwargs = tuple(sorted((k, type(v), v) for k, v in kwargs.items()))
	return (namespace, typed_args, typed_kwargs)


def cached_table(namespace: str) -> Callable:
	"""
	Memoize a pure table builder under a namespace.

	Keys are built from the namespace and the call arguments, which must be
	hashable (random variables, lambda values and enums all are). If a key
	cannot be built the call is computed without caching rather than failing.

	Args:
		namespace: Cache namespace, usually the builder's public name

	Returns:
		Decorated function with write-once caching

	Example:
		@cached_table("stirling")
		def build_table(family, Y=None, lam=None, nmax=8):
			...
	"""

	def decorator(func: Callable) -> Callable:
		@wraps(func)
		def wrapper(*args: Any, **kwargs: Any) -> Any:
			try:
				key = _cache_key(namespace, args, kwargs)
				hash(key)
			except TypeError as e:
				# Unhashable arguments: compute uncached
				logger.warning(f"table cache bypassed for {namespace}: {e}")
				return func(*args, **kwargs)

			cached = _cache.get(key)
			if cached is not None:
				logger.debug(f"table cache hit for {namespace}")
				return cached

			value = func(*args, **kwargs)
			with _lock:
				stored = _cache.setdefault(key, value)
				while len(_cache) > MAX_CACHED_TABLES:
					del _cache[next(iter(_cache))]
				return stored

		return wrapper

	return decorator


def reset_table_cache(namespace: str | None = None) -> None:
	"""Drop cached tables, all of them or those of one namespace."""
	with _lock:
		if namespace is None:
			_cache.clear()
			return
		for key in [k for k in _cache if k[0] == namespace]:
			del _cache[key]


def cached_entry_count(namespace: str | None = None) -> int:
	"""Number of cached tables, optionally restricted to a namespace."""
	if namespace is None:
		return len(_cache)
	return sum(1 for key in _cache if key[0] == namespace)
