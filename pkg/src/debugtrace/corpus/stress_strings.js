function describe(user) {
  var greeting = "Hello, " + user.name + "!";
  var path = '/users/' + user.id + '/profile';
  var quoted = "she said \"hi\"";
  var apostrophe = 'it\'s fine';
  return greeting + " " + path + " " + quoted + " " + apostrophe;
}
module.exports = { describe: describe };
