export class SchemaMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatch";
  }
}

export class EmptyData extends Error {
  constructor(message: string) {
    super(message);
    this.name = "EmptyData";
  }
}

/** Raised when a numeric pre-render assertion on the dataset fails. */
export class PrerenderCheckFailed extends Error {
  constructor(message: string) {
    super(message);
    this.name = "PrerenderCheckFailed";
  }
}
