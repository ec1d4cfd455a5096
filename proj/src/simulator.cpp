namespace iwbc {}
