TOOL_NAME = "gravcat-coding"
__version__ = "0.1.0"
