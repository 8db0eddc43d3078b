#!/usr/bin/env python3
"""Independent reference interpreter for the micro-VM, used to produce
tests/data/golden_vectors.txt.

Record format (whitespace separated, '-' for an empty bit string):
    program input budget outcome output steps
budget is "steps" or "steps:excursion".
"""

import argparse
import random
import sys

HALT, LEFT, RIGHT, FLIP, OUT, READ, LOOP, END = range(8)


def decode(bits):
    ops = [int(bits[i:i + 3], 2) for i in range(0, len(bits) - len(bits) % 3, 3)]
    match, stack = {}, []
    for i, op in enumerate(ops):
        if op == LOOP:
            stack.append(i)
        elif op == END:
            if not stack:
                return ops, None
            j = stack.pop()
            match[i], match[j] = j, i
    return (ops, match) if not stack else (ops, None)


def run(program, data, max_steps, max_exc=None):
    """Returns (outcome, output, steps)."""
    ops, match = decode(program)
    if match is None:
        return "Invalid", "", 0
    ones = set()  # positions of 1-cells
    pc = head = cursor = steps = 0
    out = []
    snap, next_snap = None, 0
    while True:
        if pc >= len(ops):
            return "Halted", "".join(out), steps
        config = (pc, head, cursor, frozenset(ones))
        if snap is not None and config == snap:
            return "ProvenDivergent", "".join(out), steps
        if steps == next_snap:
            snap = config
            next_snap = 1 if steps == 0 else 2 * steps
        if steps >= max_steps:
            return "BudgetExceeded", "".join(out), steps
        steps += 1
        op = ops[pc]
        cell = head in ones
        if op == HALT:
            return "Halted", "".join(out), steps
        if op in (LEFT, RIGHT):
            head += 1 if op == RIGHT else -1
            if max_exc is not None and abs(head) > max_exc:
                return "BudgetExceeded", "".join(out), steps
            pc += 1
        elif op == FLIP:
            ones ^= {head}
            pc += 1
        elif op == OUT:
            out.append("1" if cell else "0")
            pc += 1
        elif op == READ:
            bit = data[cursor] == "1" if cursor < len(data) else False
            if cursor < len(data):
                cursor += 1
            if bit:
                ones.add(head)
            else:
                ones.discard(head)
            pc += 1
        elif op == LOOP:
            pc = match[pc] + 1 if not cell else pc + 1
        else:
            pc = match[pc] + 1 if cell else pc + 1


def field(s):
    return s if s else "-"


def assemble(names):
    table = ["HALT", "LEFT", "RIGHT", "FLIP", "OUT", "READ", "LOOP", "END"]
    return "".join(format(table.index(n), "03b") for n in names.split())


def cases(rng):
    fixed = [
        ("000", "", 10, None), ("100", "", 10, None), ("011110111", "", 10**6, None),
        ("101100", "1", 10, None), ("", "", 0, None), ("100", "", 0, None),
        ("110", "", 10, None), ("111", "", 10, None), ("10011", "", 10, None),
        ("11", "", 10, None),
        (assemble("FLIP LOOP RIGHT FLIP END"), "", 500, None),
        (assemble("FLIP LOOP RIGHT FLIP END"), "", 500, 3),
        (assemble("FLIP LOOP LEFT FLIP END"), "", 500, 7),
        (assemble("READ LOOP OUT READ END"), "1101", 100, None),
        (assemble("READ LOOP OUT END"), "1", 1000, None),
        (assemble("READ OUT READ OUT READ OUT"), "10", 100, None),
        (assemble("FLIP LOOP FLIP RIGHT FLIP LEFT FLIP END"), "", 10**5, None),
        (assemble("FLIP LOOP RIGHT RIGHT FLIP END"), "", 64, None),
        (assemble("READ LOOP READ END OUT"), "1110", 100, None),
    ]
    for c in fixed:
        yield c
    for _ in range(150):
        nops = rng.randint(1, 10)
        ops = [rng.randrange(8) for _ in range(nops)]
        # bias toward balanced bracket programs
        if rng.random() < 0.7:
            ops = [o for o in ops if o not in (LOOP, END)]
            for _ in range(rng.randint(1, 2)):
                i = rng.randint(0, len(ops))
                j = rng.randint(i, len(ops))
                ops = ops[:i] + [LOOP] + ops[i:j] + [END] + ops[j:]
        prog = "".join(format(o, "03b") for o in ops)
        if rng.random() < 0.2:
            prog += rng.choice(["0", "1", "01", "11"])
        data = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        budget = rng.choice([5, 20, 100, 1000, 10000])
        exc = rng.choice([None, None, None, 2, 5])
        yield prog, data, budget, exc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    sink = sys.stdout if args.out == "-" else open(args.out, "w")
    sink.write("# program input budget outcome output steps\n")
    for prog, data, steps, exc in cases(rng):
        outcome, output, used = run(prog, data, steps, exc)
        budget = str(steps) if exc is None else f"{steps}:{exc}"
        sink.write(f"{field(prog)} {field(data)} {budget} {outcome} {field(output)} {used}\n")


if __name__ == "__main__":
    main()
