let counter = 0;
const LIMIT = 10;
const NAMES = ["ada", "grace", "alan"];
let current = NAMES[0];
while (counter < LIMIT) {
  counter += 1;
  if (counter === LIMIT / 2) {
    current = NAMES[1];
  }
}
const report = { counter: counter, current: current };
