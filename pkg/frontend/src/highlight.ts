// Three-way line highlighting. Classes must partition exactly by set
// membership of (ground truth, prediction); the property test checks
// this against the set algebra the server reports in diff payloads.

export type LineClass = "both" | "missed" | "over" | "plain";

export interface LineRow {
  line: number;
  text: string;
  cls: LineClass;
  criterion: boolean;
}

export function lineClass(line: number, truth: ReadonlySet<number>,
                          predicted: ReadonlySet<number>): LineClass {
  const inTruth = truth.has(line);
  const inPred = predicted.has(line);
  if (inTruth && inPred) return "both";
  if (inTruth) return "missed";
  if (inPred) return "over";
  return "plain";
}

export function buildLineRows(source: string, truth: readonly number[],
                              predicted: readonly number[] | null,
                              criterionLine: number): LineRow[] {
  const truthSet = new Set(truth);
  const predSet = new Set(predicted ?? []);
  return source.split("\n").map((text, index) => {
    const line = index + 1;
    return {
      line,
      text,
      cls: lineClass(line, truthSet, predSet),
      criterion: line === criterionLine,
    };
  });
}

// regroup rendered rows back into the server's diff shape; the property
// test asserts this round-trips the API payload exactly
export function classSets(rows: readonly LineRow[]): {
  both: number[]; missed: number[]; over: number[];
} {
  const pick = (cls: LineClass) =>
    rows.filter((r) => r.cls === cls).map((r) => r.line);
  return { both: pick("both"), missed: pick("missed"), over: pick("over") };
}
