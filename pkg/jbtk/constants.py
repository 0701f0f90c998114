CURRENT_VERSION = 0.1
