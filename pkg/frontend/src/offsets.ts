// The service stores highlight offsets as Unicode scalar-value indices;
// DOM selections report UTF-16 code-unit offsets. Convert at the boundary.

export function toScalarOffset(text: string, utf16Index: number): number {
  let scalars = 0;
  let i = 0;
  while (i < utf16Index && i < text.length) {
    const cp = text.codePointAt(i)!;
    i += cp > 0xffff ? 2 : 1;
    scalars += 1;
  }
  return scalars;
}

export function toUtf16Offset(text: string, scalarIndex: number): number {
  let scalars = 0;
  let i = 0;
  while (scalars < scalarIndex && i < text.length) {
    const cp = text.codePointAt(i)!;
    i += cp > 0xffff ? 2 : 1;
    scalars += 1;
  }
  return i;
}
