from .debugger import DebugSession

__all__ = ["DebugSession"]
