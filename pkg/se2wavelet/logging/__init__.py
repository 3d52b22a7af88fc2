# Logging configuration package
