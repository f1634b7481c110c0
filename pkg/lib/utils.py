import os
import sys


def write(filename: str, text: str, append=False) -> None:
    if filename == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(filename)
    if directory:
        os.makedirs(directory, exist_ok=True)
    mode = "a" if append else "w"
    with open(filename, mode) as f:
        f.write(text)


def read(filename: str) -> str:
    if filename == "-":
        return sys.stdin.read()
    with open(filename, "r") as f:
        return f.read()


def jsonl(lines: list[str]) -> str:
    return "".join(line + "\n" for line in lines)


def read_lines(filename: str) -> list[str]:
    return [line for line in read(filename).splitlines() if line.strip()]
