/**
 * Reader for the transducer toolkit's dataset text format.
 *
 * One pair per line: input tokens, a single TAB, output tokens. The literal
 * `-1` alone stands for the empty output; an empty input is an empty left
 * field. `#` lines are header comments carrying provenance (machine hash,
 * seed, walk config).
 */

export interface Pair {
  input: number[];
  output: number[];
}

export interface DatasetFile {
  pairs: Pair[];
  comments: string[];
  machineId: string | null;
}

export class DatasetParseError extends Error {
  constructor(line: number, message: string) {
    super(`line ${line}: ${message}`);
  }
}

function parseTokens(field: string, line: number, allowEmptyMark: boolean): number[] {
  const fields = field.split(/\s+/).filter((f) => f.length > 0);
  if (allowEmptyMark && fields.length === 1 && fields[0] === '-1') {
    return [];
  }
  return fields.map((f) => {
    const t = Number(f);
    if (!Number.isInteger(t) || t < 0) {
      throw new DatasetParseError(line, `bad token ${JSON.stringify(f)}`);
    }
    return t;
  });
}

export function parseDataset(text: string): DatasetFile {
  const pairs: Pair[] = [];
  const comments: string[] = [];
  let machineId: string | null = null;
  const lines = text.split('\n');
  for (let i = 0; i < lines.length; i++) {
    const raw = lines[i];
    if (raw.trim().length === 0) continue;
    if (raw.trimStart().startsWith('#')) {
      const body = raw.trimStart().slice(1).trim();
      comments.push(body);
      if (body.startsWith('machine:')) {
        machineId = body.slice('machine:'.length).trim();
      }
      continue;
    }
    const tab = raw.indexOf('\t');
    if (tab < 0) {
      throw new DatasetParseError(i + 1, 'expected a TAB between input and output');
    }
    const right = raw.slice(tab + 1);
    if (right.trim().length === 0) {
      throw new DatasetParseError(i + 1, 'missing output field (use -1 for empty)');
    }
    pairs.push({
      input: parseTokens(raw.slice(0, tab), i + 1, false),
      output: parseTokens(right, i + 1, true),
    });
  }
  return { pairs, comments, machineId };
}

/** Distinct tokens of one side, sorted; `-1` never appears (it is only a file mark). */
export function induceVocab(pairs: Pair[], side: 'input' | 'output'): number[] {
  const seen = new Set<number>();
  for (const p of pairs) {
    for (const t of p[side]) seen.add(t);
  }
  return [...seen].sort((a, b) => a - b);
}
