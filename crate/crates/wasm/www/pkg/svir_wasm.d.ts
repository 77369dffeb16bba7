/* tslint:disable */
/* eslint-disable */

/**
 * Normal form of a module expression such as `G(3/2)G(1/2)w`.
 */
export function act(sector_name: string, a: string, b: string, c: string, src: string): string;

/**
 * Super-bracket of two algebra elements such as `L(2)` and `G(-1/2)`.
 */
export function bracket(sector_name: string, left: string, right: string): string;

/**
 * The two-dimensional module: action table and invariant subspaces.
 */
export function findim(sector_name: string, a: string, b: string, index_bound: number): string;

/**
 * Whittaker vectors in the truncation at doubled `fdeg_max`.
 */
export function kernel(sector_name: string, a: string, b: string, c: string, fdeg_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly act: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number];
    readonly bracket: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly findim: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly kernel: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
