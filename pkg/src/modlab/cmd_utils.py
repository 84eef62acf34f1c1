"""Console helpers: banners and coloured messages"""

import os

from colorama import init


class bcolors:
    INFO = "\033[1;97m"
    OKGREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"


STATUS_COLOURS = {
    "pass": bcolors.OKGREEN,
    "success": bcolors.OKGREEN,
    "fail": bcolors.FAIL,
    "refused": bcolors.WARNING,
    "inconclusive": bcolors.WARNING,
}

try:
    columns, rows = os.get_terminal_size(0)
except OSError:  # not attached to a terminal
    columns, rows = 80, 24


def init_console():
    init()


def print_line(text, status=None):
    """A full-width banner, coloured by the status of a command"""
    colour = STATUS_COLOURS.get(status, bcolors.INFO)
    left = max((columns - len(text) - 2) // 2, 0)
    right = max(columns - left - len(text) - 2, 0)
    print(f"{colour}{'=' * left} {text} {'=' * right}{bcolors.ENDC}")


def print_info(text, **args):
    print(f"{bcolors.INFO}{text}{bcolors.ENDC}", **args)


def print_success(text, **args):
    print(f"{bcolors.OKGREEN}{text}{bcolors.ENDC}", **args)


def print_fail(text, exception=None):
    print(f"{bcolors.FAIL}{text}{bcolors.ENDC}")
    if exception:
        print(f"{bcolors.FAIL}{exception}{bcolors.ENDC}")


def print_warn(text, **args):
    print(f"{bcolors.WARNING}{text}{bcolors.ENDC}", **args)


def colour_status(status):
    colour = STATUS_COLOURS.get(status)
    return f"{colour}{status}{bcolors.ENDC}" if colour else status
