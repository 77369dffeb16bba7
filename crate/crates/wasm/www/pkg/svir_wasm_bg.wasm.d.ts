/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const act: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number];
export const bracket: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
export const findim: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
export const kernel: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
