"""Expression language: parser, printer and evaluator."""
from app.services.expression.evaluator import Evaluation, Target, evaluate, normalize
from app.services.expression.parser import parse, parse_units, to_source

__all__ = ["Evaluation", "Target", "evaluate", "normalize", "parse", "parse_units", "to_source"]
