"""Pydantic schemas for reports and requests."""
