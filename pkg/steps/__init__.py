from steps.base import Step, Chain, Task

__all__ = ["Step", "Chain", "Task"]
