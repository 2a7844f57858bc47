# Subcommands of app.py, one module each
from commands import indec, parse, repdim, silting, tilting_scan, verify

COMMANDS = {
    "parse": parse,
    "indec": indec,
    "silting": silting,
    "repdim": repdim,
    "verify": verify,
    "tilting-scan": tilting_scan,
}
