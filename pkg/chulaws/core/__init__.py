"""Core chulaws engine, algebra modules and law checks."""
