# Configuration, fixture readers and report helpers for the command-line workbench
