import { describe, expect, test } from "vitest";

import { buildLineRows, classSets, lineClass } from "../src/highlight";

// deterministic PRNG so a failing pair is reproducible
function mulberry32(seed: number): () => number {
  let state = seed;
  return () => {
    state |= 0;
    state = (state + 0x6d2b79f5) | 0;
    let t = Math.imul(state ^ (state >>> 15), 1 | state);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomLines(rand: () => number, lineCount: number): number[] {
  const lines: number[] = [];
  for (let line = 1; line <= lineCount; line++) {
    if (rand() < 0.4) lines.push(line);
  }
  return lines;
}

// the server's set algebra, computed independently of the renderer
function serverDiff(truth: number[], predicted: number[]) {
  const t = new Set(truth);
  const p = new Set(predicted);
  const asc = (a: number, b: number) => a - b;
  return {
    both: truth.filter((n) => p.has(n)).sort(asc),
    missed: truth.filter((n) => !p.has(n)).sort(asc),
    over: predicted.filter((n) => !t.has(n)).sort(asc),
  };
}

function sampleSource(lineCount: number): string {
  return Array.from({ length: lineCount },
                    (_, i) => `line ${i + 1};`).join("\n");
}

describe("highlight fidelity", () => {
  test("50 randomized pairs partition exactly like the server algebra", () => {
    const rand = mulberry32(20260822);
    for (let round = 0; round < 50; round++) {
      const lineCount = 5 + Math.floor(rand() * 36);
      const truth = randomLines(rand, lineCount);
      const predicted = randomLines(rand, lineCount);
      const criterion = 1 + Math.floor(rand() * lineCount);

      const rows = buildLineRows(sampleSource(lineCount), truth, predicted,
                                 criterion);
      expect(rows).toHaveLength(lineCount);
      expect(classSets(rows)).toEqual(serverDiff(truth, predicted));

      // partition: every line lands in exactly one class
      const classified = new Set([
        ...classSets(rows).both,
        ...classSets(rows).missed,
        ...classSets(rows).over,
      ]);
      for (const row of rows) {
        if (row.cls === "plain") expect(classified.has(row.line)).toBe(false);
        else expect(classified.has(row.line)).toBe(true);
      }

      // the criterion marker is always present on its row
      const marked = rows.filter((row) => row.criterion);
      expect(marked.map((row) => row.line)).toEqual([criterion]);
    }
  });

  test("class algebra on a hand-checked pair", () => {
    const truth = new Set([1, 2, 4]);
    const predicted = new Set([2, 3]);
    expect(lineClass(2, truth, predicted)).toBe("both");
    expect(lineClass(1, truth, predicted)).toBe("missed");
    expect(lineClass(4, truth, predicted)).toBe("missed");
    expect(lineClass(3, truth, predicted)).toBe("over");
    expect(lineClass(5, truth, predicted)).toBe("plain");
  });

  test("a null prediction renders every truth line as missed", () => {
    const rows = buildLineRows("a\nb\nc", [1, 3], null, 3);
    expect(classSets(rows)).toEqual({ both: [], missed: [1, 3], over: [] });
  });
});
