"""Catalog law checks, loaded by the engine from registry.json."""
